#include "suites.hpp"
#include "cli.hpp"

#include "psyn/parse.hpp"

namespace psyn::cli {

namespace {

Rational mc_value(const Pmdp &m, const StateSet &T, const Instantiation &u)
{
	return reach_prob_mc(instantiate(m, u), T);
}

std::vector<Instantiation> mesh(const std::vector<std::string> &params, const std::vector<Rational> &axis)
{
	std::vector<Instantiation> out{{}};
	for (const auto &x : params) {
		std::vector<Instantiation> next;
		for (const auto &u : out)
			for (const auto &v : axis) {
				Instantiation w = u;
				w[x] = v;
				next.push_back(std::move(w));
			}
		out = std::move(next);
	}
	return out;
}

std::vector<Rational> multiples(long den, bool interior)
{
	std::vector<Rational> v;
	for (long k = interior ? 1 : 0; k <= (interior ? den - 1 : den); k++)
		v.push_back(frac(k, den));
	return v;
}

std::vector<Scheduler> every_scheduler(const Pmdp &m)
{
	std::vector<Scheduler> out{{}};
	for (const auto &s : m.states) {
		auto as = m.actions(s);
		std::vector<Scheduler> next;
		for (const auto &sg : out)
			for (const auto &a : as) {
				Scheduler t = sg;
				t.choice[s] = a;
				next.push_back(std::move(t));
			}
		out = std::move(next);
	}
	return out;
}

int sign(const Rational &q) { return sgn(q); }

SuiteResult chonev()
{
	Polynomial f = parse_poly("-2*x^2*y + y");
	GadgetOutput g = poly_to_pmc(f, 5, frac(7, 8));
	size_t n = 0, bad = 0;
	for (const auto &u : mesh({"x", "y"}, multiples(20, false))) {
		Instantiation v = u;
		for (const auto &x : g.model.params)
			if (!v.count(x))
				v[x] = 0;
		n++;
		if (sign(f.eval(u) - 5) != sign(mc_value(g.model, g.target_states(), v) - frac(7, 8)))
			bad++;
	}
	return {"chonev", bad == 0, std::to_string(n) + " points, " + std::to_string(bad) + " sign mismatches"};
}

SuiteResult binomial()
{
	Polynomial f = parse_poly("2*x*(1-x) + 1/4");
	BinomialRep rep = binomial_representation(f);
	bool in_unit = std::all_of(rep.p.begin(), rep.p.end(), [](const Rational &p) { return p >= 0 && p <= 1; });
	BinomialRep book{"x", 3, {frac(1, 4), frac(11, 12), frac(11, 12), frac(1, 4)}};
	GadgetOutput py = adequate_poly_to_pmc(f);
	RationalFunction sol = solution_function(py.model, py.target_states()).at(py.model.initial);
	bool ok = in_unit && rep.expand() == f && book.expand() == f && sol == RationalFunction(f);
	return {"binomial", ok, "n=" + std::to_string(rep.n) + ", expansion " + (rep.expand() == f ? "exact" : "wrong") +
	                            ", pyramid sol " + (sol == RationalFunction(f) ? "= f" : "!= f")};
}

SuiteResult moss()
{
	std::string detail;
	for (int n = 1; n <= 4; n++) {
		Pmdp m = moss_family(n);
		const StateSet &T = m.target("T");
		auto all = every_scheduler(m);
		auto corners = mesh(m.params, {0, 1});
		for (const auto &u : corners) {
			Scheduler best = moss_scheduler(n, u);
			for (const auto &s : all) {
				Rational v = mc_value(induced_pmc(m, s), T, u);
				bool same = true;
				for (const auto &[st, a] : best.choice)
					same = same && s.choice.at(st) == a;
				if (v != (same ? 1 : 0))
					return {"moss", false, "n=" + std::to_string(n) + ": " + s.str() + " has value " + to_string(v) +
					                           " at " + to_string(u)};
			}
		}
		std::vector<Scheduler> omega;
		for (const auto &u : corners)
			omega.push_back(moss_scheduler(n, u));
		omega.pop_back();
		OssReport rep = verify_oss(m, T, omega, ParamSpace::wd(), corners);
		if (!rep.gap)
			return {"moss", false, "n=" + std::to_string(n) + ": a proper subset was accepted"};
	}
	return {"moss", true, "n=1..4, every corner has a unique optimal scheduler, subsets gapped"};
}

SuiteResult sat()
{
	Cnf good{3, {{1, 2, 3}, {-1, -2, 3}}};
	GadgetOutput g = sat_to_pmc(good);
	auto a = find_assignment(good);
	Rational v = mc_value(g.model, g.target_states(), sat_instantiation(good, *a));
	bool ok = v == 1 && g.model.states.size() == 3 * 3 + 2 * 2 + 3;

	Cnf bad{1, {{1, 1, 1}, {-1, -1, -1}}};
	GadgetOutput h = sat_to_pmc(bad);
	Rational best = 0;
	for (const auto &u : mesh(h.model.params, multiples(3, false)))
		best = std::max(best, mc_value(h.model, h.target_states(), u));
	ok = ok && best <= frac(2, 3) && h.model.states.size() == 3 + 4 + 3;
	return {"sat", ok, "sat instance Pr = " + to_string(v) + ", unsat grid max " + to_string(best)};
}

SuiteResult pipeline()
{
	Pmdp m = moss_family(2);
	const StateSet &T = m.target("T");
	GadgetOutput b = to_binary(m, "T");
	GadgetOutput p = binary_to_pmc(b.model, "T");
	auto fresh = choice_params(p);
	std::vector<std::string> xs;
	for (const auto &[s, x] : fresh)
		xs.push_back(x);
	for (const auto &u : mesh(m.params, {frac(1, 4), frac(1, 2), frac(3, 4)})) {
		Pmdp mi = instantiate(m, u);
		Rational lo = minmax_reach(mi, T, Mode::Min).value, hi = minmax_reach(mi, T, Mode::Max).value;
		Rational clo = 1, chi = 0;
		for (const auto &c : mesh(xs, {0, 1})) {
			Instantiation w = u;
			w.insert(c.begin(), c.end());
			Rational v = mc_value(p.model, p.target_states(), w);
			clo = std::min(clo, v);
			chi = std::max(chi, v);
		}
		if (lo != clo || hi != chi)
			return {"pipeline", false, "extremum mismatch at " + to_string(u)};
	}
	return {"pipeline", true, "MOSS n=2: min/max equal corner extrema at 9 samples"};
}

SuiteResult threshold()
{
	GadgetOutput py = adequate_poly_to_pmc(parse_poly("2*x*(1-x) + 1/4"));
	const StateSet &T = py.target_states();
	for (Rational lambda : {frac(1, 4), frac(3, 4)}) {
		GadgetOutput t = threshold_gadget(py.model, "T", lambda);
		for (const auto &x : multiples(10, true)) {
			Instantiation u{{"x", x}};
			Rational pr = mc_value(py.model, T, u), pr2 = mc_value(t.model, t.target_states(), u);
			Rational want = lambda <= frac(1, 2) ? Rational(2 * lambda * pr) : Rational(2 * lambda - 1 + 2 * (1 - lambda) * pr);
			if (pr2 != want)
				return {"threshold", false, "lambda=" + to_string(lambda) + " at x=" + to_string(x)};
		}
	}
	GadgetOutput gp = gp_gadget(py.model, "T");
	for (const auto &x : multiples(10, false)) {
		Instantiation u{{"x", x}};
		Rational v = mc_value(gp.model, gp.target_states(), u);
		bool boundary = x == 0 || x == 1;
		if (boundary ? v != 0 : v != mc_value(py.model, T, u))
			return {"threshold", false, "gp gadget at x=" + to_string(x)};
	}
	return {"threshold", true, "lambda in {1/4, 3/4} and the gp gadget agree on the grid"};
}

Csrg pennies()
{
	Csrg g;
	g.states = {"s", "win", "lose"};
	g.initial = "s";
	g.targets = {"win"};
	g.acts1 = {{"s", {"a", "b"}}, {"win", {"a"}}, {"lose", {"a"}}};
	g.acts2 = {{"s", {"c", "d"}}, {"win", {"c"}}, {"lose", {"c"}}};
	g.kernel[{"s", "a", "c"}] = {{"win", 1}};
	g.kernel[{"s", "a", "d"}] = {{"lose", 1}};
	g.kernel[{"s", "b", "c"}] = {{"lose", 1}};
	g.kernel[{"s", "b", "d"}] = {{"win", frac(1, 2)}, {"s", frac(1, 2)}};
	g.kernel[{"win", "a", "c"}] = {{"win", 1}};
	g.kernel[{"lose", "a", "c"}] = {{"lose", 1}};
	return g;
}

SuiteResult csrg()
{
	Csrg g = pennies();
	CsrgOutput e = csrg_to_pmdp(g);
	std::set<std::string> keep(g.states.begin(), g.states.end());
	for (const auto &tau : strategy_grid(g.states, g.acts2, 4)) {
		Pmdp inst = instantiate(e.model, e.phi(tau));
		for (const auto &s : g.states)
			for (const auto &a : g.acts1.at(s)) {
				std::map<std::string, Rational> want;
				for (const auto &b : g.acts2.at(s))
					for (const auto &[t, p] : g.kernel.at({s, a, b}))
						want[t] += tau.prob(s, b) * p;
				for (auto it = want.begin(); it != want.end();)
					it = it->second == 0 ? want.erase(it) : std::next(it);
				if (merged_row(inst, s, a, keep) != want)
					return {"csrg", false, "row (" + s + "," + a + ") differs"};
			}
	}
	CsrgBounds b = csrg_value_bounds(g, 4);
	return {"csrg", b.lower <= b.upper,
	        "rows match for every tau on the 1/4 grid, bounds [" + to_string(b.lower) + ", " + to_string(b.upper) + "]"};
}

SuiteResult etr()
{
	size_t checked = 0;
	for (const std::string name : {"loop", "moss1"}) {
		Pmdp m = std::get<Pmdp>(resolve_model(name));
		const StateSet &T = m.target("T");
		for (const auto &spec : EncodeSpec::all()) {
			if (spec.extrapolated())
				continue;
			EtrFormula f = encode(m, T, spec);
			bool gp = spec.space == EncodeSpec::GP;
			for (const auto &u : mesh(m.params, multiples(4, gp))) {
				if (!spec.param_space().contains(m, u))
					continue;
				CompiledPmdp cm(m, T);
				NumMdp nm = cm.instantiate(u);
				Rational v = optimum(nm, spec.sense()).values[nm.init];
				bool accept = holds(v, spec.bound, frac(1, 2));
				Assignment a = witness_assignment(m, T, spec, u);
				checked++;
				if (evaluate(f, a) != accept)
					return {"etr", false, name + " " + spec.str() + " at " + to_string(u)};
			}
		}
	}
	return {"etr", true, std::to_string(checked) + " (model, encoding, point) cases agree with the optimum"};
}

SuiteResult robust()
{
	const Rational half = frac(1, 2);
	Cnf good{2, {{1, 2, 2}, {-1, -2, -2}}};
	GadgetOutput g = sat_to_robust_pmdp(good);
	std::vector<Rational> axis = multiples(10, false);
	for (long k = 1; k <= 2; k++)
		axis.push_back(frac(k, 3));
	Scheduler sigma = robust_scheduler_of(*find_assignment(good));
	Pmdp chain = induced_pmc(g.model, sigma);
	for (const auto &x : axis)
		if (mc_value(chain, g.target_states(), {{"x", x}}) <= half)
			return {"robust", false, "satisfying scheduler fails at x=" + to_string(x)};

	Cnf bad{2, {{1, 1, 1}, {-1, -1, -1}}};
	GadgetOutput h = sat_to_robust_pmdp(bad);
	for (const auto &s : every_scheduler(h.model)) {
		Pmdp c = induced_pmc(h.model, s);
		bool hit = false;
		for (long k = 1; k <= 2 && !hit; k++)
			hit = mc_value(c, h.target_states(), {{"x", frac(k, 3)}}) == half;
		if (!hit)
			return {"robust", false, "unsat: " + s.str() + " avoids 1/2 at the mandatory points"};
	}
	return {"robust", true, "sat scheduler stays above 1/2, every unsat scheduler hits 1/2"};
}

SuiteResult semicontinuity()
{
	Pmdp m = std::get<Pmdp>(resolve_model("loop"));
	Rational v0 = mc_value(m, m.target("T"), {{"p", 0}});
	Rational v1 = mc_value(m, m.target("T"), {{"p", frac(1, 1000)}});
	return {"semicontinuity", v0 == 0 && v1 == 1, "loop: value(0) = " + to_string(v0) + ", value(1/1000) = " + to_string(v1)};
}

SuiteResult flip()
{
	Pmdp m = moss_family(2);
	const StateSet &T = m.target("T");
	ComplementResult c = complement_target(m, T);
	for (const auto &u : mesh(m.params, multiples(4, true))) {
		Rational hi = minmax_reach(instantiate(m, u), T, Mode::Max).value;
		Rational lo = minmax_reach(instantiate(c.model, u), c.target, Mode::Min).value;
		if (hi + lo != 1)
			return {"flip", false, "max + min' = " + to_string(Rational(hi + lo)) + " at " + to_string(u)};
	}
	return {"flip", true, "max Pr(<>T) + min Pr(<>T') = 1 on MOSS n=2"};
}

} // namespace

const std::vector<Suite> &suites()
{
	static const std::vector<Suite> all = {
	    {"chonev", "-2x^2y + y >= 5 against Pr >= 7/8 on a 21x21 grid", chonev},
	    {"binomial", "binomial representation and pyramid of 2x(1-x) + 1/4", binomial},
	    {"moss", "exponential minimal optimal scheduler sets", moss},
	    {"sat", "3SAT to pMC, one sat and one unsat instance", sat},
	    {"pipeline", "pMDP to binary to pMC extrema", pipeline},
	    {"threshold", "threshold and graph-preservation gadgets", threshold},
	    {"csrg", "stochastic game encoding and value bounds", csrg},
	    {"etr", "ETR encodings against exact optima", etr},
	    {"robust", "3SAT to robust pMDP", robust},
	    {"semicontinuity", "loop pMC jump at p = 0", semicontinuity},
	    {"flip", "max/min complement identity", flip},
	};
	return all;
}

} // namespace psyn::cli
