#include "psyn/gadgets.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace psyn;
using namespace psyn::test;

static Pmdp two_action_mdp()
{
	// s: a -> T w.p. 1/3, b -> T w.p. 2/3
	Pmdp m;
	m.add_state("s");
	m.initial = "s";
	m.add_edge("s", "a", "T", Q("1/3"));
	m.add_edge("s", "a", "bot", Q("2/3"));
	m.add_edge("s", "b", "T", Q("2/3"));
	m.add_edge("s", "b", "bot", Q("1/3"));
	m.add_edge("T", kDefaultAction, "T", 1);
	m.add_edge("bot", kDefaultAction, "bot", 1);
	m.add_target("T", "T");
	return m;
}

static Pmdp pyramid() { return adequate_poly_to_pmc(P("2*x*(1-x) + 1/4")).model; }

TEST(ReachMc, Examples)
{
	Pmdp direct;
	direct.add_state("s");
	direct.initial = "s";
	direct.add_edge("s", kDefaultAction, "T", 1);
	direct.add_edge("T", kDefaultAction, "T", 1);
	EXPECT_EQ(reach_prob_mc(direct, {"T"}), 1);

	Pmdp loop = loop_pmc();
	EXPECT_EQ(reach_prob_mc(instantiate(loop, {{"p", Q("1/2")}}), {"T"}), 1);
	EXPECT_EQ(reach_prob_mc(instantiate(loop, {{"p", 0}}), {"T"}), 0);
	EXPECT_THROW(reach_prob_mc(loop, {"T"}), ModelError);
}

TEST(MinMax, Examples)
{
	Pmdp m = two_action_mdp();
	ValueResult mx = minmax_reach(m, {"T"}, Mode::Max);
	ValueResult mn = minmax_reach(m, {"T"}, Mode::Min);
	EXPECT_EQ(mx.value, Q("2/3"));
	EXPECT_EQ(mn.value, Q("1/3"));
	ASSERT_TRUE(mx.witness && mn.witness);
	EXPECT_EQ(mx.witness->choice.at("s"), "b");
	EXPECT_EQ(mn.witness->choice.at("s"), "a");

	Pmdp loop = instantiate(loop_pmc(), {{"p", Q("1/3")}});
	ValueResult mc = minmax_reach(loop, {"T"}, Mode::Mc);
	EXPECT_FALSE(mc.witness);
	EXPECT_EQ(mc.value, reach_prob_mc(loop, {"T"}));
	EXPECT_EQ(minmax_reach(loop, {"T"}, Mode::Max).value, mc.value);
}

TEST(MinMax, MossCornerHasOneWinningScheduler)
{
	Pmdp m = moss_family(1);
	Pmdp mi = instantiate(m, {{"x1", 1}});
	ValueResult r = minmax_reach(mi, m.target("T"), Mode::Max);
	EXPECT_EQ(r.value, 1);
	EXPECT_EQ(r.witness->choice.at("s1"), "a");
	Scheduler b;
	b.choice = {{"s1", "b"}};
	EXPECT_EQ(reach_prob_mc(induced_pmc(mi, b), m.target("T")), 0);
}

TEST(MinMax, EnumerationAndPolicyIterationAgree)
{
	for (int seed = 1; seed <= 30; seed++) {
		std::mt19937 rng(seed);
		Pmdp m = random_simple_pmdp(rng, 7, 3, 2);
		CompiledPmdp cm(m, m.target("T"));
		for (const auto &u : grid(m.params, 4, false)) {
			NumMdp nm = cm.instantiate(u);
			for (Mode mode : {Mode::Min, Mode::Max}) {
				NumOptimum e = enumerate_optimum(nm, mode);
				NumOptimum p = policy_iteration(nm, mode);
				EXPECT_EQ(e.values, p.values) << "seed " << seed << " " << to_string(mode);
				EXPECT_EQ(mc_values(nm, p.choice), p.values);
			}
		}
	}
}

TEST(MinMax, MatchesReferenceEnumeration)
{
	for (int seed = 1; seed <= 20; seed++) {
		std::mt19937 rng(seed * 7);
		Pmdp m = random_simple_pmdp(rng, 6, 2, 2);
		for (const auto &u : grid(m.params, 3, false)) {
			auto [lo, hi] = ref_minmax(m, m.target("T"), u);
			Pmdp mi = instantiate(m, u);
			EXPECT_EQ(minmax_reach(mi, m.target("T"), Mode::Min).value, lo);
			EXPECT_EQ(minmax_reach(mi, m.target("T"), Mode::Max).value, hi);
			// cap 0 forces policy iteration
			EXPECT_EQ(minmax_reach(mi, m.target("T"), Mode::Max, 0).value, hi);
		}
	}
}

TEST(MinMax, EveryScheduleIsBetweenMinAndMax)
{
	for (int seed = 1; seed <= 10; seed++) {
		std::mt19937 rng(seed + 100);
		Pmdp m = random_simple_pmdp(rng, 5, 3, 2);
		for (const auto &u : grid(m.params, 3, true)) {
			Pmdp mi = instantiate(m, u);
			Rational lo = minmax_reach(mi, m.target("T"), Mode::Min).value;
			Rational hi = minmax_reach(mi, m.target("T"), Mode::Max).value;
			for (const auto &sigma : all_schedulers(m)) {
				Rational v = ref_mc(induced_pmc(mi, sigma), m.target("T"));
				EXPECT_LE(lo, v);
				EXPECT_LE(v, hi);
			}
		}
	}
}

TEST(Solution, SingleEdgeIsTheLabel)
{
	Pmdp m;
	m.add_state("s");
	m.initial = "s";
	m.add_edge("s", kDefaultAction, "T", P("x"));
	m.add_edge("s", kDefaultAction, "bot", P("1-x"));
	m.add_edge("T", kDefaultAction, "T", 1);
	m.add_edge("bot", kDefaultAction, "bot", 1);
	SolutionFn f = solution_function(m, {"T"});
	EXPECT_EQ(f.at("s"), RationalFunction(P("x")));
	EXPECT_EQ(f.at("T"), RationalFunction(1));
	EXPECT_EQ(f.at("bot"), RationalFunction(0));
}

TEST(Solution, PyramidAndLoop)
{
	Pmdp py = pyramid();
	EXPECT_EQ(solution_function(py, {"T"}).at(py.initial), RationalFunction(P("2*x*(1-x) + 1/4")));

	SolutionFn loop = solution_function(loop_pmc(), {"T"});
	EXPECT_EQ(loop.at("s"), RationalFunction(1));
	for (auto p : {"1/6", "1/5", "1/2", "2/3", "9/10"})
		EXPECT_EQ(loop.at("s").eval({{"p", Q(p)}}), 1);
}

TEST(Solution, MatchesInstantiationsOnRandomModels)
{
	int checked = 0;
	for (int seed = 1; seed <= 10; seed++) {
		std::mt19937 rng(seed * 13);
		Pmdp m = random_simple_pmdp(rng, 6, 1, 2);
		SolutionFn f = solution_function(m, m.target("T"));
		for (int k = 0; k < 5; k++) {
			Instantiation u;
			for (const auto &x : m.params) {
				Rational r;
				do
					r = random_rational(rng, 17);
				while (r <= 0 || r >= 1);
				u[x] = r;
			}
			Pmdp mi = instantiate(m, u);
			std::vector<Rational> ref = ref_mc_values(mi, m.target("T"));
			for (size_t i = 0; i < m.states.size(); i++) {
				Rational v = f.at(m.states[i]).eval(u);
				EXPECT_EQ(v, ref[i]) << m.states[i] << " at " << to_string(u);
				EXPECT_GE(v, 0);
				EXPECT_LE(v, 1);
			}
			checked++;
		}
	}
	EXPECT_EQ(checked, 50);
}

TEST(Zero, SinksTargetsAndMoss)
{
	Pmdp m = moss_family(2);
	ZeroSets z = zero_states(m, m.target("T"));
	EXPECT_TRUE(z.forall_zero.count("bot"));
	EXPECT_TRUE(z.exists_zero.count("bot"));
	EXPECT_FALSE(z.forall_zero.count("s3"));
	EXPECT_FALSE(z.exists_zero.count("s3"));
	EXPECT_FALSE(z.forall_zero.count("s1"));
	// on gp every scheduler reaches s3 with positive probability
	EXPECT_FALSE(z.exists_zero.count("s1"));
}

TEST(Zero, AgreesWithEnumerationAtGpSamples)
{
	for (int seed = 1; seed <= 20; seed++) {
		std::mt19937 rng(seed * 3);
		Pmdp m = random_simple_pmdp(rng, 6, 3, 2);
		const StateSet &T = m.target("T");
		ZeroSets z = zero_states(m, T);
		for (const auto &s : z.forall_zero)
			EXPECT_TRUE(z.exists_zero.count(s));
		for (const auto &u : grid(m.params, 3, true)) {
			Pmdp mi = instantiate(m, u);
			CompiledPmdp cm(mi, T);
			NumMdp nm = cm.instantiate(Instantiation{});
			auto lo = enumerate_optimum(nm, Mode::Min).values;
			auto hi = enumerate_optimum(nm, Mode::Max).values;
			for (int i = 0; i < nm.n; i++) {
				const std::string &s = cm.state_names()[i];
				EXPECT_EQ(z.forall_zero.count(s) == 1, hi[i] == 0) << s;
				EXPECT_EQ(z.exists_zero.count(s) == 1, lo[i] == 0) << s;
			}
		}
	}
}

static void expect_complement_identity(const Pmdp &m, const StateSet &T, const std::vector<Instantiation> &pts)
{
	ComplementResult c = complement_target(m, T);
	for (const auto &u : pts) {
		Rational hi = minmax_reach(instantiate(m, u), T, Mode::Max).value;
		Rational lo = minmax_reach(instantiate(c.model, u), c.target, Mode::Min).value;
		EXPECT_EQ(hi + lo, 1) << to_string(u);
	}
}

TEST(Complement, Examples)
{
	Pmdp mc;
	mc.add_state("s");
	mc.initial = "s";
	mc.add_edge("s", kDefaultAction, "T", Q("1/4"));
	mc.add_edge("s", kDefaultAction, "bot", Q("3/4"));
	mc.add_edge("T", kDefaultAction, "T", 1);
	mc.add_edge("bot", kDefaultAction, "bot", 1);
	EXPECT_EQ(complement_target(mc, {"T"}).target, StateSet{"bot"});

	Pmdp moss = moss_family(2);
	ComplementResult c = complement_target(moss, moss.target("T"));
	EXPECT_EQ(c.target, StateSet{"bot"});
	expect_complement_identity(moss, moss.target("T"), grid(moss.params, 3, true));

	Cnf phi{3, {{1, 2, 3}, {-1, -2, 3}}};
	GadgetOutput g = sat_to_pmc(phi);
	EXPECT_EQ(complement_target(g.model, {"T"}).target, StateSet{"bot"});
	std::vector<Instantiation> pts;
	std::mt19937 rng(5);
	for (int k = 0; k < 6; k++) {
		Instantiation u;
		for (const auto &x : g.model.params)
			u[x] = frac(1 + static_cast<long>(rng() % 7), 8);
		pts.push_back(u);
	}
	expect_complement_identity(g.model, {"T"}, pts);
}

TEST(Complement, EndComponentsAreCollapsed)
{
	// s can loop forever with b or gamble with a
	Pmdp m;
	m.add_state("s");
	m.initial = "s";
	m.add_edge("s", "a", "T", P("x"));
	m.add_edge("s", "a", "bot", P("1-x"));
	m.add_edge("s", "b", "s", 1);
	m.add_edge("T", kDefaultAction, "T", 1);
	m.add_edge("bot", kDefaultAction, "bot", 1);
	ComplementResult c = complement_target(m, {"T"});
	EXPECT_TRUE(c.changed);
	expect_complement_identity(m, {"T"}, grid(m.params, 5, true));
}

TEST(Complement, IdentityOnRandomModels)
{
	for (int seed = 1; seed <= 25; seed++) {
		std::mt19937 rng(seed * 11);
		Pmdp m = random_simple_pmdp(rng, 6, 3, 2);
		expect_complement_identity(m, m.target("T"), grid(m.params, 3, true));
	}
}

TEST(Optimality, PmcIsOptimalEverywhere)
{
	Pmdp m = loop_pmc();
	OptimalityReport r = check_scheduler_optimality(m, default_scheduler(m), {"T"}, Mode::Max, Where::Everywhere,
	                                                ParamSpace::gp(), grid(m.params, 5, true));
	EXPECT_TRUE(r.holds);
	EXPECT_EQ(r.failed, 0u);
	EXPECT_EQ(r.verdict(), "holds-on-samples");
}

TEST(Optimality, MossSomewhereAndEverywhere)
{
	Pmdp m = moss_family(1);
	Scheduler a;
	a.choice = {{"s1", "a"}};
	std::vector<Instantiation> samples = {{{"x1", Q("1/4")}}, {{"x1", Q("1/2")}}, {{"x1", Q("9/10")}}};

	OptimalityReport some =
	    check_scheduler_optimality(m, a, m.target("T"), Mode::Max, Where::Somewhere, ParamSpace::gp(), samples);
	EXPECT_TRUE(some.holds);
	EXPECT_TRUE(some.conclusive);

	OptimalityReport every =
	    check_scheduler_optimality(m, a, m.target("T"), Mode::Max, Where::Everywhere, ParamSpace::gp(), samples);
	EXPECT_FALSE(every.holds);
	EXPECT_EQ(every.verdict(), "refuted");
	ASSERT_TRUE(every.point);
	EXPECT_EQ(every.point->at("x1"), Q("1/4"));
}

TEST(Optimality, FormulaAgreesWithEvaluationAtSamples)
{
	Pmdp m = moss_family(1);
	Scheduler a;
	a.choice = {{"s1", "a"}};
	Expr phi = phi_sigma(m, m.target("T"), a, Mode::Max);
	for (auto x : {"1/8", "1/2", "3/5", "7/8"}) {
		Assignment as;
		as.reals["x1"] = Q(x);
		EXPECT_EQ(evaluate(phi, as), Q(x) >= Q("1/2")) << x;
	}
}

TEST(Optimality, PointwiseTestAgreesWithEnumeration)
{
	for (int seed = 1; seed <= 15; seed++) {
		std::mt19937 rng(seed * 17);
		Pmdp m = random_simple_pmdp(rng, 5, 2, 2);
		const StateSet &T = m.target("T");
		for (const auto &sigma : all_schedulers(m))
			for (const auto &u : grid(m.params, 3, true))
				for (Mode mode : {Mode::Min, Mode::Max}) {
					OptimalityReport r =
					    check_scheduler_optimality(m, sigma, T, mode, Where::Everywhere, ParamSpace::gp(), {u});
					Pmdp mi = instantiate(m, u);
					// optimal from every state, not only the initial one
					CompiledPmdp cm(mi, T);
					NumMdp nm = cm.instantiate(Instantiation{});
					bool optimal = mc_values(nm, cm.choices_of(sigma)) == enumerate_optimum(nm, mode).values;
					EXPECT_EQ(r.holds, optimal) << "seed " << seed << " " << to_string(mode) << " " << to_string(u);
				}
	}
}

TEST(Oss, Examples)
{
	Pmdp moss = moss_family(2);
	const StateSet &T = moss.target("T");
	std::vector<Instantiation> corners;
	for (int a : {0, 1})
		for (int b : {0, 1})
			corners.push_back({{"x1", a}, {"x2", b}});

	OssReport all = verify_oss(moss, T, all_schedulers(moss), ParamSpace::wd(), corners);
	EXPECT_FALSE(all.gap);
	EXPECT_EQ(all.covered, 4u);

	std::vector<Scheduler> missing;
	for (const auto &s : all_schedulers(moss))
		if (!(s.choice.at("s1") == "a" && s.choice.at("s2") == "a"))
			missing.push_back(s);
	OssReport gap = verify_oss(moss, T, missing, ParamSpace::wd(), corners);
	EXPECT_TRUE(gap.gap);
	ASSERT_TRUE(gap.gap_at);
	EXPECT_EQ(*gap.gap_at, (Instantiation{{"x1", 1}, {"x2", 1}}));
	EXPECT_EQ(gap.best_at_gap, 1);

	Pmdp loop = loop_pmc();
	EXPECT_FALSE(verify_oss(loop, {"T"}, {default_scheduler(loop)}, ParamSpace::gp(), grid({"p"}, 5, true)).gap);
}

TEST(Semicontinuity, WdValueIsBelowNearbyGpValues)
{
	for (int seed = 1; seed <= 10; seed++) {
		std::mt19937 rng(seed * 19);
		Pmdp m = random_simple_pmdp(rng, 5, 1, 2);
		const StateSet &T = m.target("T");
		for (const auto &u : grid(m.params, 3, false)) {
			if (classify_instantiation(m, u).graph_preserving())
				continue;
			Rational at = reach_prob_mc(instantiate(m, u), T);
			Rational nearby = 1;
			for (int k = 0; k < 20; k++) {
				Instantiation v;
				for (const auto &[x, val] : u) {
					Rational d = frac(static_cast<long>(1 + rng() % 999), 1000000);
					if (val == 1 || (val != 0 && rng() % 2))
						d = -d;
					v[x] = val + d;
				}
				nearby = std::min(nearby, reach_prob_mc(instantiate(m, v), T));
			}
			EXPECT_LE(at, nearby + Q("1/100")) << to_string(u);
		}
	}
}
