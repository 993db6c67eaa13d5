#include "psyn/analysis.hpp"

#include <algorithm>

namespace psyn {

SolutionFn solution_function(const Pmdp &m, const StateSet &target)
{
	if (!m.is_pmc())
		throw ModelError("solution_function needs a pMC; fix a scheduler with induced_pmc first");
	CompiledPmdp cm(m, target);
	NumMdp g = cm.skeleton();
	const auto &names = cm.state_names();
	std::vector<int> choice(g.n, 0);
	auto reach = can_reach(g, &choice);
	std::vector<char> alive(g.n);
	std::vector<RationalFunction> sol(g.n);
	for (int s = 0; s < g.n; s++) {
		alive[s] = reach[s] && !g.target[s];
		if (g.target[s])
			sol[s] = RationalFunction(1);
	}
	auto label = [&](int s, int t) { return RationalFunction(m.label(names[s], m.actions(names[s]).front(), names[t])); };

	std::vector<int> pos(g.n, -1);
	for (const auto &comp : sccs(g, choice, alive)) {
		// v_i = sum_j A[i][j] v_j + b_i inside the component
		size_t n = comp.size();
		for (size_t i = 0; i < n; i++)
			pos[comp[i]] = static_cast<int>(i);
		std::vector<std::map<int, RationalFunction>> A(n);
		std::vector<RationalFunction> b(n);
		for (size_t i = 0; i < n; i++)
			for (const auto &[t, p] : g.rows[comp[i]][0].succ) {
				RationalFunction l = label(comp[i], t);
				if (pos[t] >= 0)
					A[i][pos[t]] += l;
				else if (!sol[t].is_zero())
					b[i] += l * sol[t];
			}
		// eliminate states, fewest incident edges first
		std::vector<char> gone(n, 0);
		std::vector<size_t> order;
		for (size_t step = 0; step < n; step++) {
			size_t pick = n, best = 0;
			for (size_t i = 0; i < n; i++) {
				if (gone[i])
					continue;
				size_t deg = A[i].size();
				for (size_t j = 0; j < n; j++)
					if (!gone[j] && j != i && A[j].count(static_cast<int>(i)))
						deg++;
				if (pick == n || deg < best) {
					pick = i;
					best = deg;
				}
			}
			gone[pick] = 1;
			order.push_back(pick);
			int e = static_cast<int>(pick);
			if (auto it = A[e].find(e); it != A[e].end()) {
				RationalFunction scale = RationalFunction(1) / (RationalFunction(1) - it->second);
				A[e].erase(it);
				for (auto &[t, p] : A[e])
					p *= scale;
				b[e] *= scale;
			}
			for (size_t i = 0; i < n; i++) {
				if (gone[i])
					continue;
				auto it = A[i].find(e);
				if (it == A[i].end())
					continue;
				RationalFunction w = it->second;
				A[i].erase(it);
				for (const auto &[t, p] : A[e])
					A[i][t] += w * p;
				if (!b[e].is_zero())
					b[i] += w * b[e];
				for (auto jt = A[i].begin(); jt != A[i].end();)
					jt = jt->second.is_zero() ? A[i].erase(jt) : std::next(jt);
			}
		}
		// rows now only reference states eliminated later
		std::vector<RationalFunction> x(n);
		for (size_t k = n; k-- > 0;) {
			size_t i = order[k];
			RationalFunction v = b[i];
			for (const auto &[t, p] : A[i])
				v += p * x[t];
			x[i] = v;
		}
		for (size_t i = 0; i < n; i++) {
			sol[comp[i]] = x[i];
			pos[comp[i]] = -1;
		}
	}
	SolutionFn r;
	for (int s = 0; s < g.n; s++)
		r.sol.emplace(names[s], sol[s]);
	return r;
}

} // namespace psyn
