#include "common.hpp"

namespace psyn {

using namespace detail;

GadgetOutput poly_to_pmc(const Polynomial &f, const Rational &mu, const Rational &lambda)
{
	require_open_unit(lambda, "poly_to_pmc");
	PositiveCombination pc = chonev_decompose(f, mu);
	Rational lp = pc.scaled_threshold();

	// (f - beta)/N ⋈ lp; move lp onto lambda with an increasing affine map
	Rational scale = 1, direct = 0;
	if (lambda <= lp) {
		scale = lambda / lp;
	} else {
		direct = (lambda - lp) / (1 - lp);
		scale = 1 - direct;
	}

	GadgetOutput out;
	Pmdp &m = out.model;
	m.add_state("init");
	m.initial = "init";
	Rational used = direct;
	for (size_t i = 0; i < pc.summands.size(); i++) {
		const Summand &s = pc.summands[i];
		auto node = [&](size_t j) {
			return j < s.factors.size() ? "c" + std::to_string(i + 1) + "_" + std::to_string(j + 1) : std::string("T");
		};
		Rational w = scale * s.alpha / pc.N;
		m.add_edge("init", kDefaultAction, node(0), Polynomial(w));
		used += w;
		for (size_t j = 0; j < s.factors.size(); j++) {
			const Atom &a = s.factors[j];
			Atom other{a.var, !a.negated};
			m.add_edge(node(j), kDefaultAction, node(j + 1), a.poly());
			m.add_edge(node(j), kDefaultAction, "bot", other.poly());
		}
	}
	if (direct > 0)
		m.add_edge("init", kDefaultAction, "T", Polynomial(direct));
	m.add_edge("init", kDefaultAction, "bot", Polynomial(1 - used));
	self_loop(m, "T");
	self_loop(m, "bot");
	m.add_target("T", "T");
	for (const auto &x : f.variables())
		m.add_param(x);

	out.threshold = lambda;
	out.polys["f"] = f;
	Rational beta = pc.beta, N = pc.N;
	out.value_map = [=](const Rational &v) { return Rational(direct + scale * (v - beta) / N); };
	out.transport = [](const Instantiation &u) { return u; };
	out.transport_back = out.transport;
	out.certificate["relation"] = "f ~ mu iff Pr ~ lambda";
	out.certificate["f"] = f.str();
	out.certificate["mu"] = to_string(mu);
	out.certificate["lambda"] = to_string(lambda);
	out.certificate["beta"] = to_string(beta);
	out.certificate["N"] = to_string(N);
	out.certificate["lambda_prime"] = to_string(lp);
	out.certificate["value"] = "Pr = " + to_string(direct) + " + " + to_string(Rational(scale / N)) + "*(f - (" +
	                           to_string(beta) + "))";
	if (!pc.dummy.empty())
		out.certificate["dummy"] = pc.dummy;
	finish(out, "poly_to_pmc");
	return out;
}

GadgetOutput nonsimple_pmc_to_simple_acyclic(const Pmdp &m, const std::string &target, const Rational &lambda,
                                             const std::vector<Instantiation> &probes)
{
	require_open_unit(lambda, "nonsimple_pmc_to_simple_acyclic");
	if (!m.is_pmc())
		throw GadgetError("nonsimple_pmc_to_simple_acyclic: input is not a pMC");
	SolutionFn sf = solution_function(m, m.target(target));
	const RationalFunction &sol = sf.at(m.initial);
	Polynomial h = sol.num(), g = sol.den();

	std::vector<Instantiation> pts = probes;
	if (pts.empty()) {
		Instantiation mid;
		for (const auto &x : m.params)
			mid[x] = frac(1, 2);
		pts.push_back(mid);
	}
	int sign = 0;
	for (const auto &u : pts) {
		Rational gv = g.eval(u);
		if (gv == 0)
			throw GadgetError("nonsimple_pmc_to_simple_acyclic: denominator of sol vanishes at " + to_string(u));
		int s = gv > 0 ? 1 : -1;
		if (sign != 0 && s != sign)
			throw GadgetError("nonsimple_pmc_to_simple_acyclic: denominator of sol changes sign on the probes");
		sign = s;
	}
	if (sign < 0) {
		h = -h;
		g = -g;
	}
	// h/g ⋈ λ  iff  h - λ·g + λ ⋈ λ  (g > 0)
	Polynomial f = h - (g - Polynomial(1)) * Polynomial(lambda);
	GadgetOutput out = poly_to_pmc(f, lambda, lambda);
	for (const auto &x : m.params)
		out.model.add_param(x);
	out.polys["h"] = h;
	out.polys["g"] = g;
	out.value_map = nullptr; // the map is from f, not from the source probability
	out.certificate["relation"] = "Pr ~ lambda iff Pr' ~ lambda on (0,1)^X";
	out.certificate["sol"] = "(" + h.str() + ") / (" + g.str() + ")";
	finish(out, "nonsimple_pmc_to_simple_acyclic");
	return out;
}

} // namespace psyn
