#include "common.hpp"

namespace psyn {

using namespace detail;

CsrgOutput csrg_to_pmdp(const Csrg &g)
{
	g.validate();
	CsrgOutput out;
	Pmdp &m = out.model;
	for (const auto &s : g.states)
		m.add_state(s);
	m.initial = g.initial;
	m.targets["T"] = g.targets;

	// player-II parameters, shared by every player-I action at s
	std::map<std::string, std::vector<std::string>> params;
	for (size_t si = 0; si < g.states.size(); si++) {
		const std::string &s = g.states[si];
		const auto &B = g.acts2.at(s);
		for (size_t j = 0; j + 1 < B.size(); j++) {
			std::string x = "$y" + std::to_string(si) + "_" + std::to_string(j);
			params[s].push_back(x);
			out.param_of[{s, B[j]}] = x;
			m.add_param(x);
			out.certificate["param." + x] = s + " " + B[j];
		}
	}

	for (const auto &s : g.states) {
		const auto &B = g.acts2.at(s);
		for (const auto &a : g.acts1.at(s)) {
			auto sab = [&](const std::string &b) { return "$" + s + "|" + a + "|" + b; };
			for (const auto &b : B) {
				std::string t = sab(b);
				m.add_state(t);
				for (const auto &[succ, p] : g.kernel.at({s, a, b}))
					m.add_edge(t, kDefaultAction, succ, Polynomial(p));
			}
			if (B.size() == 1) {
				m.add_edge(s, a, sab(B[0]), 1);
				continue;
			}
			// fan-out: node j splits x_j to b_j and 1-x_j onwards
			const auto &xs = params.at(s);
			std::string node = s, act = a;
			for (size_t j = 0; j < xs.size(); j++) {
				std::string next = j + 2 < B.size() ? "$" + s + "|" + a + "#" + std::to_string(j + 1) : sab(B.back());
				m.add_edge(node, act, sab(B[j]), Polynomial::var(xs[j]));
				m.add_edge(node, act, next, Polynomial::one_minus(xs[j]));
				node = next;
				act = kDefaultAction;
			}
		}
	}

	std::map<std::string, std::vector<std::string>> acts2 = g.acts2;
	out.phi = [acts2, params](const RandStrategy &tau) {
		Instantiation u;
		for (const auto &[s, xs] : params) {
			const auto &B = acts2.at(s);
			Rational rem = 1;
			for (size_t j = 0; j < xs.size(); j++) {
				Rational t = tau.prob(s, B[j]);
				u[xs[j]] = rem > 0 ? Rational(t / rem) : Rational(0);
				rem -= t;
			}
		}
		return u;
	};
	out.phi_inv = [acts2, params](const Instantiation &u) {
		RandStrategy tau;
		for (const auto &[s, B] : acts2) {
			auto it = params.find(s);
			Rational rem = 1;
			if (it != params.end())
				for (size_t j = 0; j < it->second.size(); j++) {
					const Rational &x = u.at(it->second[j]);
					tau.dist[s][B[j]] = rem * x;
					rem *= 1 - x;
				}
			tau.dist[s][B.back()] = rem;
		}
		return tau;
	};
	out.threshold = frac(1, 2);
	out.certificate["relation"] = "V(G) = min over wd u of max over sigma of Pr";
	out.certificate["transport"] = "u(x_j) = tau(b_j) / (1 - tau(b_1) - ... - tau(b_{j-1})), 0 when the rest is 0";
	finish(out, "csrg_to_pmdp");
	return out;
}

std::map<std::string, Rational> merged_row(const Pmdp &inst, const std::string &s, const std::string &a,
                                           const std::set<std::string> &keep)
{
	std::map<std::string, Rational> out;
	std::vector<std::pair<std::string, Rational>> todo;
	for (const auto &[t, p] : inst.row(s, a))
		todo.emplace_back(t, p.constant_term());
	size_t steps = 0, limit = inst.states.size() * inst.states.size() + 16;
	while (!todo.empty()) {
		auto [t, p] = todo.back();
		todo.pop_back();
		if (keep.count(t)) {
			out[t] += p;
			continue;
		}
		if (++steps > limit)
			throw ModelError("merged_row: intermediate states are not acyclic");
		auto as = inst.actions(t);
		if (as.size() != 1)
			throw ModelError("merged_row: intermediate state '" + t + "' has a choice");
		for (const auto &[u, q] : inst.row(t, as[0]))
			todo.emplace_back(u, p * q.constant_term());
	}
	for (auto it = out.begin(); it != out.end();)
		it = it->second == 0 ? out.erase(it) : std::next(it);
	return out;
}

} // namespace psyn
