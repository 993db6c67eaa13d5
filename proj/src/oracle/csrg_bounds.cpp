#include "psyn/oracle.hpp"

namespace psyn {

namespace {

// all ways to split `total` units over k slots
void compositions(unsigned total, size_t k, std::vector<unsigned> &cur, std::vector<std::vector<unsigned>> &out)
{
	if (cur.size() + 1 == k) {
		cur.push_back(total);
		out.push_back(cur);
		cur.pop_back();
		return;
	}
	for (unsigned i = 0; i <= total; i++) {
		cur.push_back(i);
		compositions(total - i, k, cur, out);
		cur.pop_back();
	}
}

Pmdp skeleton(const Csrg &g)
{
	Pmdp m;
	for (const auto &s : g.states)
		m.add_state(s);
	m.initial = g.initial;
	for (const auto &t : g.targets)
		m.add_target("T", t);
	m.targets["T"];
	return m;
}

} // namespace

std::vector<RandStrategy> strategy_grid(const std::vector<std::string> &states,
                                        const std::map<std::string, std::vector<std::string>> &acts,
                                        unsigned resolution)
{
	if (resolution < 1)
		throw OracleError("strategy grid resolution must be at least 1");
	std::vector<std::vector<std::map<std::string, Rational>>> local;
	for (const auto &s : states) {
		const auto &as = acts.at(s);
		std::vector<std::vector<unsigned>> cs;
		std::vector<unsigned> cur;
		compositions(resolution, as.size(), cur, cs);
		auto &l = local.emplace_back();
		for (const auto &c : cs) {
			std::map<std::string, Rational> d;
			for (size_t i = 0; i < as.size(); i++)
				if (c[i])
					d[as[i]] = frac(c[i], resolution);
			l.push_back(std::move(d));
		}
	}
	std::vector<RandStrategy> out;
	std::vector<size_t> idx(states.size(), 0);
	for (;;) {
		RandStrategy r;
		for (size_t i = 0; i < states.size(); i++)
			r.dist[states[i]] = local[i][idx[i]];
		out.push_back(std::move(r));
		size_t i = 0;
		while (i < idx.size() && ++idx[i] == local[i].size())
			idx[i++] = 0;
		if (i == idx.size())
			return out;
	}
}

Pmdp csrg_fix_player1(const Csrg &g, const RandStrategy &sigma)
{
	Pmdp m = skeleton(g);
	for (const auto &s : g.states)
		for (const auto &b : g.acts2.at(s))
			for (const auto &a : g.acts1.at(s)) {
				Rational w = sigma.prob(s, a);
				if (w != 0)
					for (const auto &[t, p] : g.kernel.at({s, a, b}))
						m.add_edge(s, b, t, Polynomial(w * p));
			}
	return m;
}

Pmdp csrg_fix_player2(const Csrg &g, const RandStrategy &tau)
{
	Pmdp m = skeleton(g);
	for (const auto &s : g.states)
		for (const auto &a : g.acts1.at(s))
			for (const auto &b : g.acts2.at(s)) {
				Rational w = tau.prob(s, b);
				if (w != 0)
					for (const auto &[t, p] : g.kernel.at({s, a, b}))
						m.add_edge(s, a, t, Polynomial(w * p));
			}
	return m;
}

Rational csrg_play(const Csrg &g, const RandStrategy &sigma, const RandStrategy &tau)
{
	Pmdp m = skeleton(g);
	for (const auto &s : g.states)
		for (const auto &a : g.acts1.at(s))
			for (const auto &b : g.acts2.at(s)) {
				Rational w = sigma.prob(s, a) * tau.prob(s, b);
				if (w != 0)
					for (const auto &[t, p] : g.kernel.at({s, a, b}))
						m.add_edge(s, kDefaultAction, t, Polynomial(w * p));
			}
	return reach_prob_mc(m, g.targets);
}

CsrgBounds csrg_value_bounds(const Csrg &g, unsigned resolution)
{
	g.validate();
	CsrgBounds b;
	bool first = true;
	for (const auto &sigma : strategy_grid(g.states, g.acts1, resolution)) {
		Rational v = minmax_reach(csrg_fix_player1(g, sigma), g.targets, Mode::Min).value;
		if (first || v > b.lower) {
			b.lower = v;
			b.best_sigma = sigma;
		}
		first = false;
	}
	first = true;
	for (const auto &tau : strategy_grid(g.states, g.acts2, resolution)) {
		Rational v = minmax_reach(csrg_fix_player2(g, tau), g.targets, Mode::Max).value;
		if (first || v < b.upper) {
			b.upper = v;
			b.best_tau = tau;
		}
		first = false;
	}
	return b;
}

} // namespace psyn
