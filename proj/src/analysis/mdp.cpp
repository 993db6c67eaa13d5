#include "psyn/analysis.hpp"

namespace psyn {

const char *to_string(Mode m)
{
	switch (m) {
	case Mode::Min: return "min";
	case Mode::Max: return "max";
	case Mode::Mc: return "mc";
	}
	return "?";
}

namespace {

bool better(Mode mode, const Rational &a, const Rational &b)
{
	return mode == Mode::Max ? a > b : a < b;
}

Rational expect(const NumMdp::Choice &c, const std::vector<Rational> &v)
{
	Rational r = 0;
	for (const auto &[t, p] : c.succ)
		r += p * v[t];
	return r;
}

} // namespace

NumOptimum enumerate_optimum(const NumMdp &m, Mode mode)
{
	std::vector<int> choice(m.n, 0);
	NumOptimum best;
	bool have = false;
	for (;;) {
		auto v = mc_values(m, choice);
		if (!have) {
			best = {std::move(v), choice};
			have = true;
		} else {
			// a pointwise optimal memoryless scheduler exists, so replacing on
			// strict domination ends at one of them
			bool dominates = true, strict = false;
			for (int s = 0; s < m.n && dominates; s++) {
				if (better(mode, best.values[s], v[s]))
					dominates = false;
				else if (v[s] != best.values[s])
					strict = true;
			}
			if (dominates && strict)
				best = {std::move(v), choice};
		}
		int s = 0;
		for (; s < m.n; s++) {
			if (++choice[s] < static_cast<int>(m.rows[s].size()))
				break;
			choice[s] = 0;
		}
		if (s == m.n)
			break;
	}
	return best;
}

NumOptimum policy_iteration(const NumMdp &m, Mode mode)
{
	std::vector<int> choice(m.n, 0);
	std::vector<char> frozen(m.n, 0);
	if (mode == Mode::Max) {
		// start from a policy that moves closer to the target wherever possible
		std::vector<int> dist(m.n, -1);
		std::vector<int> frontier;
		for (int s = 0; s < m.n; s++)
			if (m.target[s]) {
				dist[s] = 0;
				frontier.push_back(s);
			}
		for (int d = 1; !frontier.empty(); d++) {
			std::vector<int> next;
			for (int s = 0; s < m.n; s++) {
				if (dist[s] >= 0)
					continue;
				for (size_t c = 0; c < m.rows[s].size() && dist[s] < 0; c++)
					for (const auto &[t, p] : m.rows[s][c].succ)
						if (dist[t] >= 0 && dist[t] < d) {
							dist[s] = d;
							choice[s] = static_cast<int>(c);
							next.push_back(s);
							break;
						}
			}
			frontier = std::move(next);
		}
	} else {
		// states where the target can be avoided surely keep an avoiding action
		auto pos = positive_under_all(m);
		for (int s = 0; s < m.n; s++) {
			if (pos[s])
				continue;
			frozen[s] = 1;
			for (size_t c = 0; c < m.rows[s].size(); c++) {
				bool stays = true;
				for (const auto &[t, p] : m.rows[s][c].succ)
					if (pos[t])
						stays = false;
				if (stays) {
					choice[s] = static_cast<int>(c);
					break;
				}
			}
		}
	}
	for (;;) {
		auto v = mc_values(m, choice);
		bool changed = false;
		for (int s = 0; s < m.n; s++) {
			if (m.target[s] || frozen[s])
				continue;
			Rational cur = v[s];
			for (size_t c = 0; c < m.rows[s].size(); c++) {
				Rational q = expect(m.rows[s][c], v);
				if (better(mode, q, cur)) {
					cur = q;
					choice[s] = static_cast<int>(c);
					changed = true;
				}
			}
		}
		if (!changed)
			return {std::move(v), choice};
	}
}

NumOptimum optimum(const NumMdp &m, Mode mode, size_t cap)
{
	if (mode == Mode::Mc)
		return {mc_values(m, std::vector<int>(m.n, 0)), std::vector<int>(m.n, 0)};
	size_t count = 1;
	for (int s = 0; s < m.n; s++) {
		count *= std::max<size_t>(1, m.rows[s].size());
		if (count > cap)
			return policy_iteration(m, mode);
	}
	return enumerate_optimum(m, mode);
}

ValueResult minmax_reach(const Pmdp &m, const StateSet &target, Mode mode, size_t cap)
{
	if (!m.is_parameter_free())
		throw ModelError("minmax_reach needs a parameter-free model; instantiate it first");
	if (mode == Mode::Mc && !m.is_pmc())
		throw ModelError("mode mc needs a Markov chain");
	CompiledPmdp cm(m, target);
	NumMdp nm = cm.instantiate(std::vector<Rational>{});
	NumOptimum o = optimum(nm, mode, cap);
	ValueResult r;
	r.mode = mode;
	r.value = o.values[nm.init];
	if (mode != Mode::Mc)
		r.witness = cm.scheduler_of(o.choice);
	return r;
}

} // namespace psyn
