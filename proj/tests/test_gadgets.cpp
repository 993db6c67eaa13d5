#include "psyn/gadgets.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace psyn;
using namespace psyn::test;

static const std::vector<Rel> kRels = {Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt};

static Rational value(const GadgetOutput &g, const Instantiation &u)
{
	return ref_mc(instantiate(g.model, u), g.target_states());
}

static Pmdp three_action_pmdp()
{
	Pmdp m;
	m.add_state("s");
	m.initial = "s";
	m.add_edge("s", "a", "T", P("x"));
	m.add_edge("s", "a", "bot", P("1-x"));
	m.add_edge("s", "b", "u", 1);
	m.add_edge("s", "c", "T", Q("1/3"));
	m.add_edge("s", "c", "s", Q("2/3"));
	m.add_edge("u", kDefaultAction, "T", P("1-y"));
	m.add_edge("u", kDefaultAction, "bot", P("y"));
	m.add_edge("T", kDefaultAction, "T", 1);
	m.add_edge("bot", kDefaultAction, "bot", 1);
	m.add_target("T", "T");
	return m;
}

// ---- thresholds ----

TEST(Threshold, HalfIsIdentity)
{
	Pmdp m = loop_pmc();
	GadgetOutput g = threshold_gadget(m, "T", Q("1/2"));
	EXPECT_EQ(g.model.states, m.states);
	EXPECT_EQ(g.model.trans, m.trans);
}

TEST(Threshold, AffineValueMaps)
{
	Pmdp m = moss_family(1);
	for (auto l : {"1/4", "3/4", "1/10", "5/6"}) {
		Rational lambda = Q(l);
		GadgetOutput g = threshold_gadget(m, "T", lambda);
		EXPECT_TRUE(check_simple(g.model).simple);
		for (const auto &u : grid(m.params, 5, false))
			for (const auto &sigma : all_schedulers(m)) {
				Rational pr = ref_mc(instantiate(induced_pmc(m, sigma), u), m.target("T"));
				Scheduler s2 = sigma;
				Rational pr2 = ref_mc(instantiate(induced_pmc(g.model, s2), u), g.target_states());
				Rational expect = lambda <= Q("1/2") ? Rational(2 * lambda * pr)
				                                      : Rational(2 * lambda - 1 + 2 * (1 - lambda) * pr);
				EXPECT_EQ(pr2, expect);
				EXPECT_EQ(g.value_map(pr), pr2);
				for (Rel r : kRels)
					EXPECT_EQ(holds(pr2, r, lambda), holds(pr, r, Q("1/2")));
			}
	}
	GadgetOutput q = threshold_gadget(m, "T", Q("1/4"));
	EXPECT_EQ(q.model.label(q.model.initial, kDefaultAction, "s1"), Polynomial(Q("1/2")));
	GadgetOutput h = threshold_gadget(m, "T", Q("3/4"));
	EXPECT_EQ(h.model.label(h.model.initial, kDefaultAction, "s1"), Polynomial(Q("1/2")));
	EXPECT_EQ(h.model.row(h.model.initial, kDefaultAction).size(), 2u);
}

TEST(Threshold, NormalizeGoesTheOtherWay)
{
	Pmdp m = loop_pmc();
	for (auto l : {"1/5", "1/2", "2/3", "9/10"}) {
		GadgetOutput g = normalize_threshold(m, "T", Q(l));
		for (auto p : {"0", "1/3", "1"}) {
			Rational pr = ref_mc(instantiate(m, {{"p", Q(p)}}), {"T"});
			Rational pr2 = value(g, {{"p", Q(p)}});
			for (Rel r : kRels)
				EXPECT_EQ(holds(pr2, r, Q("1/2")), holds(pr, r, Q(l))) << l << " " << p;
		}
	}
}

TEST(Threshold, RejectsLambdaOutsideUnitInterval)
{
	EXPECT_THROW(threshold_gadget(loop_pmc(), "T", 0), GadgetError);
	EXPECT_THROW(threshold_gadget(loop_pmc(), "T", 1), GadgetError);
	EXPECT_THROW(poly_to_pmc(P("x"), 0, Q("3/2")), GadgetError);
}

// ---- polynomials ----

static void expect_poly_equivalence(const GadgetOutput &g, const Polynomial &f, const Rational &mu,
                                    const std::vector<Instantiation> &pts)
{
	for (const auto &u : pts) {
		Rational fv = f.eval(u), pr = value(g, u);
		for (Rel r : kRels)
			ASSERT_EQ(holds(fv, r, mu), holds(pr, r, g.threshold)) << f.str() << " at " << to_string(u);
		if (g.value_map) {
			EXPECT_EQ(g.value_map(fv), pr);
		}
	}
}

TEST(PolyToPmc, ChonevExampleWeights)
{
	GadgetOutput g = poly_to_pmc(P("-2*x^2*y + y"), 5, Q("7/8"));
	EXPECT_TRUE(check_simple(g.model).simple);
	std::multiset<Rational> w;
	for (const auto &[t, p] : g.model.row("init", kDefaultAction))
		if (t != "bot")
			w.insert(p.constant_term());
	EXPECT_EQ(w, (std::multiset<Rational>{Q("1/4"), Q("1/4"), Q("1/4"), Q("1/8")}));
	expect_poly_equivalence(g, P("-2*x^2*y + y"), 5, grid({"x", "y"}, 6, false));
}

TEST(PolyToPmc, ConstantHitsLambdaExactly)
{
	for (auto l : {"1/3", "1/2", "4/5"}) {
		GadgetOutput g = poly_to_pmc(P("3/7"), Q("3/7"), Q(l));
		// a constant gets a dummy parameter; any value of it works
		for (const auto &u : grid(g.model.params, 3, false))
			EXPECT_EQ(value(g, u), Q(l));
	}
}

TEST(PolyToPmc, RandomQuadricsOnTheGrid)
{
	std::mt19937 rng(42);
	const char *vars[] = {"x", "y"};
	for (int t = 0; t < 12; t++) {
		Polynomial f;
		for (int k = 0; k < 5; k++) {
			Polynomial mono(random_rational(rng, 5) * (rng() % 2 ? 1 : -1));
			unsigned deg = rng() % 5;
			for (unsigned d = 0; d < deg; d++)
				mono *= Polynomial::var(vars[rng() % 2]);
			f += mono;
		}
		if (f.variables().empty())
			continue;
		std::set<std::string> vs = f.variables();
		std::vector<std::string> xs(vs.begin(), vs.end());
		for (auto mu : {Q("0"), Q("1/3")}) {
			GadgetOutput g = poly_to_pmc(f, mu, Q("1/2"));
			EXPECT_TRUE(check_simple(g.model).simple);
			expect_poly_equivalence(g, f, mu, grid(xs, 11, false));
		}
	}
}

TEST(NonsimpleToSimple, Examples)
{
	const Rational half = Q("1/2");
	auto check = [&](const Pmdp &m, const std::vector<Instantiation> &pts) {
		GadgetOutput g = nonsimple_pmc_to_simple_acyclic(m, "T", half);
		EXPECT_TRUE(check_simple(g.model).simple);
		for (const auto &u : pts) {
			Rational a = ref_mc(instantiate(m, u), m.target("T"));
			// constant sol gets a dummy parameter in the output
			Instantiation v = u;
			for (const auto &x : g.model.params)
				v.emplace(x, half);
			Rational b = value(g, v);
			for (Rel r : kRels)
				EXPECT_EQ(holds(a, r, half), holds(b, r, half)) << to_string(u);
		}
	};
	check(induced_pmc(moss_family(1), {{{"s1", "a"}}}), grid({"x1"}, 9, true));
	check(induced_pmc(moss_family(2), {{{"s1", "a"}, {"s2", "b"}}}), grid({"x1", "x2"}, 7, true));
	check(loop_pmc(), grid({"p"}, 9, true));

	Pmdp xy;
	xy.add_state("s");
	xy.initial = "s";
	xy.add_edge("s", kDefaultAction, "T", P("x*y"));
	xy.add_edge("s", kDefaultAction, "bot", P("1 - x*y"));
	xy.add_edge("T", kDefaultAction, "T", 1);
	xy.add_edge("bot", kDefaultAction, "bot", 1);
	xy.add_target("T", "T");
	EXPECT_FALSE(check_simple(xy).simple);
	check(xy, grid({"x", "y"}, 9, true));
}

TEST(Adequate, PyramidExample)
{
	Polynomial f = P("2*x*(1-x) + 1/4");
	GadgetOutput g = adequate_poly_to_pmc(f);
	EXPECT_EQ(g.certificate.at("height"), "3");
	EXPECT_EQ(g.certificate.at("exits"), "1/4,11/12,11/12,1/4");
	EXPECT_TRUE(check_simple(g.model).simple);
	EXPECT_EQ(solution_function(g.model, {"T"}).at(g.model.initial), RationalFunction(f));
}

TEST(Adequate, SingleVariableIsOneEdge)
{
	GadgetOutput g = adequate_poly_to_pmc(P("x"));
	EXPECT_EQ(g.model.label(g.model.initial, kDefaultAction, "T"), P("x"));
	EXPECT_EQ(solution_function(g.model, {"T"}).at(g.model.initial), RationalFunction(P("x")));
}

TEST(Adequate, SymbolicIdentity)
{
	for (auto f : {"x*(1-x)/2 + 1/4", "x^2*(1-x)", "1/2", "x^3 - 3/2*x^2 + 3/4*x + 1/8", "(1-x)^2"}) {
		GadgetOutput g = adequate_poly_to_pmc(P(f));
		EXPECT_TRUE(check_simple(g.model).simple) << f;
		EXPECT_EQ(solution_function(g.model, {"T"}).at(g.model.initial), RationalFunction(P(f))) << f;
	}
}

TEST(GpGadget, ValuesOnAndOffTheGpSpace)
{
	for (int seed = 1; seed <= 6; seed++) {
		std::mt19937 rng(seed);
		Pmdp m = induced_pmc(random_simple_pmdp(rng, 5, 1, 2), Scheduler{});
		if (m.params.empty())
			continue;
		GadgetOutput g = gp_gadget(m, "T");
		EXPECT_TRUE(check_simple(g.model).simple);
		for (const auto &u : grid(m.params, 5, false)) {
			Rational v = value(g, u);
			if (std::all_of(u.begin(), u.end(), [](const auto &kv) { return kv.second > 0 && kv.second < 1; }))
				EXPECT_EQ(v, ref_mc(instantiate(m, u), m.target("T"))) << to_string(u);
			else
				EXPECT_EQ(v, 0) << to_string(u);
		}
	}
	GadgetOutput loop = gp_gadget(loop_pmc(), "T");
	EXPECT_EQ(value(loop, {{"p", Q("1/2")}}), 1);
	EXPECT_EQ(value(loop, {{"p", 0}}), 0);
	EXPECT_EQ(value(loop, {{"p", 1}}), 0);
}

// ---- non-determinism ----

TEST(Binary, AlreadyBinaryIsCopied)
{
	Pmdp m;
	m.add_state("s");
	m.initial = "s";
	m.add_edge("s", "a", "T", 1);
	m.add_edge("s", "b", "bot", 1);
	m.add_edge("T", kDefaultAction, "T", 1);
	m.add_edge("bot", kDefaultAction, "bot", 1);
	m.add_target("T", "T");
	EXPECT_TRUE(is_binary(m));
	GadgetOutput g = to_binary(m, "T");
	EXPECT_EQ(g.model.trans, m.trans);
	EXPECT_EQ(g.model.states, m.states);
}

TEST(Binary, ThreeActionStateBecomesAChain)
{
	Pmdp m = three_action_pmdp();
	std::string why;
	EXPECT_FALSE(is_binary(m, &why));
	GadgetOutput g = to_binary(m, "T");
	EXPECT_TRUE(is_binary(g.model));
	EXPECT_TRUE(check_simple(g.model).simple);
	EXPECT_EQ(g.model.actions("s"), (std::vector<std::string>{"next", "pick"}));
	for (const auto &u : grid(m.params, 3, false)) {
		auto [lo, hi] = ref_minmax(m, {"T"}, u);
		auto [lo2, hi2] = ref_minmax(g.model, {"T"}, u);
		EXPECT_EQ(lo, lo2) << to_string(u);
		EXPECT_EQ(hi, hi2) << to_string(u);
	}
	for (const auto &sigma : all_schedulers(m)) {
		Scheduler s2 = g.scheduler_map(sigma);
		EXPECT_EQ(g.scheduler_back(s2).choice.at("s"), sigma.choice.at("s"));
		Instantiation u{{"x", Q("1/3")}, {"y", Q("1/4")}};
		EXPECT_EQ(ref_mc(instantiate(induced_pmc(m, sigma), u), {"T"}),
		          ref_mc(instantiate(induced_pmc(g.model, s2), u), {"T"}));
	}
}

TEST(BinaryToPmc, RejectsNonBinary)
{
	EXPECT_THROW(binary_to_pmc(three_action_pmdp(), "T"), GadgetError);
}

TEST(BinaryToPmc, CornersAreSchedulers)
{
	Pmdp m = moss_family(2);
	GadgetOutput bin = to_binary(m, "T");
	GadgetOutput pmc = binary_to_pmc(bin.model, "T");
	EXPECT_TRUE(pmc.model.is_pmc());
	EXPECT_TRUE(check_simple(pmc.model).simple);
	for (const auto &u : grid(m.params, 3, true)) {
		Rational best = 0, worst = 1;
		for (const auto &sigma : all_schedulers(m)) {
			Scheduler s2 = bin.scheduler_map(sigma);
			Rational v = ref_mc(instantiate(pmc.model, corner_of(pmc, s2, u)), {"T"});
			EXPECT_EQ(v, ref_mc(instantiate(induced_pmc(m, sigma), u), {"T"}));
			best = std::max(best, v);
			worst = std::min(worst, v);
		}
		auto [lo, hi] = ref_minmax(m, {"T"}, u);
		EXPECT_EQ(best, hi);
		EXPECT_EQ(worst, lo);

		Instantiation mid = u;
		for (const auto &[s, x] : choice_params(pmc))
			mid[x] = Q("1/2");
		Rational v = ref_mc(instantiate(pmc.model, mid), {"T"});
		EXPECT_LE(lo, v);
		EXPECT_LE(v, hi);
	}
}

// ---- games ----

static Csrg three_b_game()
{
	Csrg g;
	g.states = {"s", "win", "lose"};
	g.initial = "s";
	g.targets = {"win"};
	g.acts1 = {{"s", {"a", "a2"}}, {"win", {"i"}}, {"lose", {"i"}}};
	g.acts2 = {{"s", {"b1", "b2", "b3"}}, {"win", {"j"}}, {"lose", {"j"}}};
	int k = 0;
	for (auto a : {"a", "a2"})
		for (auto b : {"b1", "b2", "b3"}) {
			Rational p = frac(++k, 7);
			g.kernel[{"s", a, b}] = {{"win", p}, {"lose", 1 - p}};
		}
	g.kernel[{"win", "i", "j"}] = {{"win", 1}};
	g.kernel[{"lose", "i", "j"}] = {{"lose", 1}};
	return g;
}

static RandStrategy random_tau(std::mt19937 &rng, const Csrg &g)
{
	RandStrategy tau;
	for (const auto &s : g.states) {
		const auto &B = g.acts2.at(s);
		std::vector<Rational> w;
		Rational sum = 0;
		for (size_t i = 0; i < B.size(); i++) {
			w.push_back(Rational(static_cast<long>(rng() % 5)));
			sum += w.back();
		}
		if (sum == 0)
			w.back() = sum = 1;
		for (size_t i = 0; i < B.size(); i++)
			tau.dist[s][B[i]] = w[i] / sum;
	}
	return tau;
}

TEST(Csrg, SinglePlayerTwoActionsIsParameterFree)
{
	Csrg g;
	g.states = {"s", "win", "lose"};
	g.initial = "s";
	g.targets = {"win"};
	g.acts1 = {{"s", {"a", "b"}}, {"win", {"i"}}, {"lose", {"i"}}};
	g.acts2 = {{"s", {"j"}}, {"win", {"j"}}, {"lose", {"j"}}};
	g.kernel[{"s", "a", "j"}] = {{"win", Q("1/3")}, {"lose", Q("2/3")}};
	g.kernel[{"s", "b", "j"}] = {{"win", Q("3/4")}, {"lose", Q("1/4")}};
	g.kernel[{"win", "i", "j"}] = {{"win", 1}};
	g.kernel[{"lose", "i", "j"}] = {{"lose", 1}};
	CsrgOutput out = csrg_to_pmdp(g);
	EXPECT_TRUE(out.model.params.empty());
	EXPECT_EQ(minmax_reach(out.model, {"win"}, Mode::Max).value, Q("3/4"));
}

TEST(Csrg, InstantiatedRowsAreTheMixedKernel)
{
	Csrg g = load_csrg(std::string(PSYN_TEST_DATA) + "/pennies.json");
	Csrg g3 = three_b_game();
	std::mt19937 rng(9);
	for (const Csrg *game : {&g, &g3}) {
		CsrgOutput out = csrg_to_pmdp(*game);
		EXPECT_TRUE(check_simple(out.model).simple);
		std::set<std::string> keep(game->states.begin(), game->states.end());
		for (int k = 0; k < 10; k++) {
			RandStrategy tau = random_tau(rng, *game);
			Pmdp inst = instantiate(out.model, out.phi(tau));
			for (const auto &s : game->states)
				for (const auto &a : game->acts1.at(s)) {
					std::map<std::string, Rational> expect;
					for (const auto &b : game->acts2.at(s))
						for (const auto &[t, p] : game->kernel.at({s, a, b}))
							expect[t] += tau.prob(s, b) * p;
					for (auto it = expect.begin(); it != expect.end();)
						it = it->second == 0 ? expect.erase(it) : std::next(it);
					EXPECT_EQ(merged_row(inst, s, a, keep), expect) << s << " " << a;
				}
		}
	}
}

TEST(Csrg, TransportRoundTrips)
{
	Csrg g = three_b_game();
	CsrgOutput out = csrg_to_pmdp(g);
	std::mt19937 rng(3);
	for (int k = 0; k < 20; k++) {
		RandStrategy tau = random_tau(rng, g);
		Instantiation u = out.phi(tau);
		EXPECT_TRUE(classify_instantiation(out.model, u).well_defined());
		RandStrategy back = out.phi_inv(u);
		for (const auto &s : g.states)
			for (const auto &b : g.acts2.at(s))
				EXPECT_EQ(back.prob(s, b), tau.prob(s, b));
	}
	// the rest of the mass is 0 after b1: x_2 is pinned to 0
	RandStrategy dirac;
	dirac.dist["s"] = {{"b1", 1}, {"b2", 0}, {"b3", 0}};
	Instantiation u = out.phi(dirac);
	EXPECT_EQ(out.phi_inv(u).prob("s", "b1"), 1);
}

// ---- 3SAT ----

TEST(Sat, StateCountAndSatisfyingInstantiation)
{
	Cnf phi{2, {{1, 2, -1}, {-2, -2, 1}}};
	GadgetOutput g = sat_to_pmc(phi);
	EXPECT_EQ(g.model.states.size(), 13u);
	EXPECT_TRUE(check_simple(g.model).simple);
	EXPECT_EQ(g.threshold, Q("2/3"));
	auto a = find_assignment(phi);
	ASSERT_TRUE(a);
	EXPECT_EQ(value(g, sat_instantiation(phi, *a)), 1);

	Cnf one{1, {{1, 1, 1}}};
	GadgetOutput g1 = sat_to_pmc(one);
	EXPECT_EQ(value(g1, sat_instantiation(one, {false, true})), 1);
}

TEST(Sat, UnsatStaysAtMostTwoThirdsOnTheStructuredGrid)
{
	Cnf phi{1, {{1, 1, 1}, {-1, -1, -1}}};
	ASSERT_FALSE(find_assignment(phi));
	GadgetOutput g = sat_to_pmc(phi);
	Rational best = 0;
	// multiples of 1/6 contain the multiples of 1/(k+1) = 1/3
	for (const auto &u : grid(g.model.params, 7, false))
		best = std::max(best, value(g, u));
	EXPECT_LE(best, Q("2/3"));
}

TEST(Sat, RejectsClausesOfWrongWidth)
{
	EXPECT_THROW(sat_to_pmc(Cnf{2, {{1, 2}}}), GadgetError);
	EXPECT_THROW(sat_to_pmc(Cnf{2, {{1, 2, 3}}}), GadgetError);
}

static Rational robust_value(const GadgetOutput &g, const Scheduler &sigma, const Rational &x)
{
	return ref_mc(instantiate(induced_pmc(g.model, sigma), {{"x", x}}), {"T"});
}

TEST(RobustSat, MinimaSitAtTheClauseMarks)
{
	Cnf phi{2, {{1, 2, 2}, {-1, -2, -2}}};
	GadgetOutput g = sat_to_robust_pmdp(phi);
	EXPECT_TRUE(check_simple(g.model).simple);
	// x1 occurs in clause 1 only: f_1_alpha vanishes-to-1/2 at the other clause mark 2/3
	const Polynomial &f = g.polys.at("f_1_alpha");
	EXPECT_EQ(f.eval({{"x", Q("2/3")}}), Q("1/2"));
	for (int k = 0; k <= 30; k++) {
		Rational x = frac(k, 30);
		if (x != Q("2/3")) {
			EXPECT_GT(f.eval({{"x", x}}), Q("1/2"));
		}
	}
}

TEST(RobustSat, SatAndUnsatValues)
{
	Cnf sat{2, {{1, 2, 2}, {-1, -2, -2}}};
	GadgetOutput g = sat_to_robust_pmdp(sat);
	auto a = find_assignment(sat);
	ASSERT_TRUE(a);
	Scheduler sigma = robust_scheduler_of(*a);
	EXPECT_EQ(robust_assignment_of(sigma, 2), *a);
	for (int k = 0; k <= 100; k++)
		EXPECT_GT(robust_value(g, sigma, frac(k, 100)), Q("1/2"));
	for (int k = 1; k <= 2; k++)
		EXPECT_GT(robust_value(g, sigma, frac(k, 3)), Q("1/2"));

	Cnf u3{1, {{1, 1, 1}, {-1, -1, -1}}};
	GadgetOutput gu = sat_to_robust_pmdp(u3);
	for (const auto &sigma2 : all_schedulers(gu.model)) {
		bool hit = false;
		for (int k = 1; k <= 2; k++)
			hit = hit || robust_value(gu, sigma2, frac(k, 3)) == Q("1/2");
		EXPECT_TRUE(hit);
	}
}

TEST(RobustSat, TrivialFormulaIsReported)
{
	try {
		sat_to_robust_pmdp(Cnf{2, {{1, 2, 2}, {1, -2, -2}}});
		FAIL();
	} catch (const TrivialSat &e) {
		EXPECT_TRUE(e.assignment[1]);
	}
}

// ---- MOSS ----

TEST(Moss, EveryCornerHasItsOwnScheduler)
{
	for (int n : {1, 3}) {
		Pmdp m = moss_family(n);
		EXPECT_EQ(m.states.size(), static_cast<size_t>(n + 2));
		for (const auto &u : grid(m.params, 2, false)) {
			Scheduler best = moss_scheduler(n, u);
			for (const auto &sigma : all_schedulers(m)) {
				Rational v = ref_mc(instantiate(induced_pmc(m, sigma), u), m.target("T"));
				bool same = true;
				for (const auto &[s, a] : best.choice)
					same = same && sigma.choice.at(s) == a;
				EXPECT_EQ(v, same ? 1 : 0);
			}
		}
	}
	Pmdp m2 = moss_family(2);
	for (const auto &sigma : all_schedulers(m2))
		EXPECT_EQ(ref_mc(instantiate(induced_pmc(m2, sigma), {{"x1", Q("1/2")}, {"x2", Q("1/2")}}), {"s3"}),
		          Q("1/4"));
}

// ---- inequality systems ----

static bool exists_forall_below_half(const GadgetOutput &g, const Instantiation &u)
{
	return minmax_reach(instantiate(g.model, u), g.target_states(), Mode::Max).value < Q("1/2");
}

TEST(Ineqs, GridEquivalence)
{
	auto run = [](std::vector<Polynomial> fs, bool expect_feasible) {
		ConstraintSystem cs;
		cs.polys = std::move(fs);
		GadgetOutput g = ineqs_to_pmdp(cs);
		EXPECT_EQ(g.model.actions("init").size(), cs.polys.size());
		bool any = false;
		for (const auto &u : grid({"x"}, 21, false)) {
			bool lhs = exists_forall_below_half(g, u);
			EXPECT_EQ(lhs, cs.holds_at(u)) << to_string(u);
			any = any || lhs;
		}
		EXPECT_EQ(any, expect_feasible);
	};
	run({P("x - 3/4"), P("1/4 - x")}, true);
	// x < 0 and x > 0: the strict system has no solution, only x = 0 solves the weak one
	run({P("x"), P("-x")}, false);
	run({P("x - 1/2")}, true);
	EXPECT_THROW(ineqs_to_pmdp(ConstraintSystem{}), GadgetError);
}

TEST(TwoObjective, GridEquivalence)
{
	// sol1 = x towards a, sol2 = 1-x towards c
	Pmdp m;
	m.add_state("s");
	m.initial = "s";
	m.add_edge("s", kDefaultAction, "a", P("x"));
	m.add_edge("s", kDefaultAction, "c", P("1-x"));
	m.add_edge("a", kDefaultAction, "a", 1);
	m.add_edge("c", kDefaultAction, "c", 1);
	m.add_target("T1", "a");
	m.add_target("T2", "c");
	for (Rel rel : {Rel::Ge, Rel::Gt, Rel::Le}) {
		for (auto [t2, l1, l2] : {std::tuple{"T2", "3/5", "2/5"}, std::tuple{"T1", "3/5", "1/3"}}) {
			GadgetOutput g = two_objective_to_forall(m, "T1", t2, Q(l1), Q(l2), rel);
			EXPECT_TRUE(check_simple(g.model).simple);
			for (const auto &u : grid({"x"}, 21, false)) {
				Pmdp mi = instantiate(g.model, u);
				bool forall = true;
				for (const auto &sigma : all_schedulers(g.model))
					forall = forall && holds(ref_mc(induced_pmc(mi, sigma), g.target_states()), rel, Q("1/2"));
				Pmdp src = instantiate(m, u);
				bool both = holds(ref_mc(src, m.target("T1")), rel, Q(l1)) &&
				            holds(ref_mc(src, m.target(t2)), rel, Q(l2));
				EXPECT_EQ(forall, both) << to_string(rel) << " " << t2 << " " << to_string(u);
			}
		}
	}
	EXPECT_THROW(two_objective_to_forall(m, "T1", "T2", Q("2/5"), Q("3/5"), Rel::Ge), GadgetError);
	GadgetOutput w = two_objective_to_forall(m, "T1", "T2", Q("3/5"), Q("2/5"), Rel::Ge);
	EXPECT_EQ(w.certificate.at("a1_weight"), "5/6");
	EXPECT_EQ(w.certificate.at("a2_direct"), "1/6");
}

TEST(Feasibility, QuarticAndBoxShift)
{
	EXPECT_EQ(quad_to_quartic({P("x")}), P("x^2"));
	Polynomial q = quad_to_quartic({P("x - 1/2"), P("y")});
	EXPECT_EQ(q, P("(x-1/2)^2 + y^2"));
	EXPECT_EQ(q.eval({{"x", Q("1/2")}, {"y", 0}}), 0);
	EXPECT_TRUE(quad_to_quartic({}).is_zero());

	EXPECT_EQ(shift_scale_box(P("x")).eval({{"x", Q("1/2")}}), 0);
	Polynomial sq = shift_scale_box(P("x^2 - 1"));
	EXPECT_EQ(sq.eval({{"x", 0}}), 0);
	EXPECT_EQ(sq.eval({{"x", 1}}), 0);
	EXPECT_EQ(shift_scale_box(P("7/3")), P("7/3"));
}

TEST(Feasibility, DeltaChain)
{
	ConstraintSystem cs = ineq_chain_with_delta(P("x"), 0);
	EXPECT_EQ(cs.polys.size(), 6u);
	std::set<std::string> fresh;
	for (const auto &v : cs.variables())
		if (v[0] == '$')
			fresh.insert(v);
	EXPECT_EQ(fresh.size(), 5u);

	// f = 0: d_4 = 1/4 and each d_(i-1) = d_i^2 / 2
	ConstraintSystem zero = ineq_chain_with_delta(Polynomial(), 0);
	Valuation w;
	Rational d = Q("1/4");
	for (int i = 4; i >= 0; i--) {
		w[delta_var(static_cast<unsigned>(i))] = d;
		d = d * d / 2;
	}
	EXPECT_TRUE(zero.holds_at(w));

	ConstraintSystem one = ineq_chain_with_delta(Polynomial(1), 0);
	std::set<std::string> vs = one.variables();
	std::vector<std::string> vars(vs.begin(), vs.end());
	for (const auto &u : grid(vars, 4, false))
		EXPECT_FALSE(one.holds_at(u));
}
