#include "support.hpp"

namespace psyn::test {

std::vector<Rational> ref_mc_values(const Pmdp &mc, const StateSet &target)
{
	size_t n = mc.states.size();
	std::map<std::string, size_t> idx;
	for (size_t i = 0; i < n; i++)
		idx[mc.states[i]] = i;
	std::vector<std::vector<Rational>> P(n, std::vector<Rational>(n));
	for (size_t i = 0; i < n; i++) {
		auto as = mc.actions(mc.states[i]);
		if (as.size() != 1)
			throw std::logic_error("ref_mc_values: not a Markov chain");
		for (const auto &[t, p] : mc.row(mc.states[i], as[0]))
			P[i][idx.at(t)] += p.constant_term();
	}
	std::vector<char> good(n, 0);
	for (size_t i = 0; i < n; i++)
		good[i] = target.count(mc.states[i]) > 0;
	for (bool grow = true; grow;) {
		grow = false;
		for (size_t i = 0; i < n; i++)
			for (size_t j = 0; j < n && !good[i]; j++)
				if (P[i][j] > 0 && good[j])
					good[i] = grow = true;
	}
	// x_i - sum_j P_ij x_j = 0 for unknowns, x = 1 on target, 0 on bad
	std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n + 1));
	for (size_t i = 0; i < n; i++) {
		A[i][i] = 1;
		if (target.count(mc.states[i]))
			A[i][n] = 1;
		else if (good[i])
			for (size_t j = 0; j < n; j++)
				A[i][j] -= P[i][j];
	}
	for (size_t c = 0; c < n; c++) {
		size_t r = c;
		while (A[r][c] == 0)
			r++;
		std::swap(A[r], A[c]);
		Rational d = A[c][c];
		for (auto &e : A[c])
			e /= d;
		for (size_t i = 0; i < n; i++)
			if (i != c && A[i][c] != 0) {
				Rational f = A[i][c];
				for (size_t j = 0; j <= n; j++)
					A[i][j] -= f * A[c][j];
			}
	}
	std::vector<Rational> x(n);
	for (size_t i = 0; i < n; i++)
		x[i] = A[i][n];
	return x;
}

Rational ref_mc(const Pmdp &mc, const StateSet &target)
{
	auto x = ref_mc_values(mc, target);
	return x[mc.state_index(mc.initial)];
}

std::vector<Scheduler> all_schedulers(const Pmdp &m)
{
	std::vector<Scheduler> out{Scheduler{}};
	for (const auto &s : m.states) {
		std::vector<Scheduler> next;
		for (const auto &sc : out)
			for (const auto &a : m.actions(s)) {
				Scheduler t = sc;
				t.choice[s] = a;
				next.push_back(t);
			}
		out = std::move(next);
	}
	return out;
}

std::pair<Rational, Rational> ref_minmax(const Pmdp &m, const StateSet &target, const Instantiation &u)
{
	bool first = true;
	Rational lo, hi;
	for (const auto &sc : all_schedulers(m)) {
		Rational v = ref_mc(instantiate(induced_pmc(m, sc), u), target);
		if (first || v < lo)
			lo = v;
		if (first || v > hi)
			hi = v;
		first = false;
	}
	return {lo, hi};
}

Pmdp loop_pmc()
{
	Pmdp m;
	m.add_state("s");
	m.add_state("T");
	m.initial = "s";
	m.add_edge("s", kDefaultAction, "s", P("1-p"));
	m.add_edge("s", kDefaultAction, "T", P("p"));
	m.add_edge("T", kDefaultAction, "T", 1);
	m.add_target("T", "T");
	return m;
}

Rational random_rational(std::mt19937 &rng, int den)
{
	std::uniform_int_distribution<int> d(0, den);
	return frac(d(rng), den);
}

Pmdp random_simple_pmdp(std::mt19937 &rng, int states, int max_actions, int params)
{
	Pmdp m;
	int inner = std::max(1, states - 2);
	for (int i = 0; i < inner; i++)
		m.add_state("s" + std::to_string(i));
	m.add_state("T");
	m.add_state("bot");
	m.initial = "s0";
	std::uniform_int_distribution<int> pick_state(0, inner + 1), pick_kind(0, 2), pick_param(0, params - 1),
		pick_actions(1, max_actions);
	auto name = [&](int i) { return i < inner ? "s" + std::to_string(i) : (i == inner ? std::string("T") : std::string("bot")); };
	for (int i = 0; i < inner; i++) {
		int na = pick_actions(rng);
		for (int a = 0; a < na; a++) {
			std::string act = std::string(1, static_cast<char>('a' + a));
			std::string s = name(i), t1 = name(pick_state(rng)), t2 = name(pick_state(rng));
			switch (params > 0 ? pick_kind(rng) : pick_kind(rng) % 2) {
			case 0:
				m.add_edge(s, act, t1, 1);
				break;
			case 1: {
				Rational c = frac(1 + static_cast<long>(rng() % 3), 4);
				m.add_edge(s, act, t1, Polynomial(c));
				m.add_edge(s, act, t2, Polynomial(1 - c));
				break;
			}
			default: {
				std::string x = "x" + std::to_string(pick_param(rng));
				m.add_edge(s, act, t1, Polynomial::var(x));
				m.add_edge(s, act, t2, Polynomial::one_minus(x));
			}
			}
		}
	}
	m.add_edge("T", kDefaultAction, "T", 1);
	m.add_edge("bot", kDefaultAction, "bot", 1);
	for (int k = 0; k < params; k++)
		m.add_param("x" + std::to_string(k));
	m.add_target("T", "T");
	return m;
}

std::vector<Instantiation> grid(const std::vector<std::string> &params, int points, bool interior)
{
	std::vector<Rational> vals;
	for (int k = 0; k < points; k++)
		vals.push_back(interior ? frac(k + 1, points + 1) : frac(k, points - 1));
	std::vector<Instantiation> out{Instantiation{}};
	for (const auto &x : params) {
		std::vector<Instantiation> next;
		for (const auto &u : out)
			for (const auto &v : vals) {
				Instantiation w = u;
				w[x] = v;
				next.push_back(w);
			}
		out = std::move(next);
	}
	return out;
}

} // namespace psyn::test
