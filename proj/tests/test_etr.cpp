#include "psyn/encode.hpp"
#include "psyn/gadgets.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace psyn;
using namespace psyn::test;

static const std::string kData = PSYN_TEST_DATA;
static const std::string kGolden = kData + "/../golden/";

static std::string slurp(const std::string &path)
{
	std::ifstream in(path);
	EXPECT_TRUE(in) << path;
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

static Pmdp target_only()
{
	Pmdp m;
	m.add_state("T");
	m.initial = "T";
	m.add_edge("T", kDefaultAction, "T", 1);
	m.add_target("T", "T");
	return m;
}

static EtrFormula trivial()
{
	EtrFormula f;
	f.declare_real("x");
	f.body = and_of({atom(P("x"), Rel::Gt, P("0")), atom(P("x"), Rel::Lt, P("1"))});
	f.comment = "trivial";
	return f;
}

// ---- spec plumbing ----

TEST(EncodeSpec, ParseAndList)
{
	for (const auto &s : EncodeSpec::all())
		EXPECT_EQ(EncodeSpec::parse(s.str()).str(), s.str());
	auto all = EncodeSpec::all();
	EXPECT_EQ(all.size(), 16u);
	for (size_t i = 0; i < all.size(); i++)
		EXPECT_EQ(all[i].extrapolated(), i >= 10) << all[i].str();
	EXPECT_EQ(EncodeSpec::parse("exists,>=,wd").sense(), Mode::Max);
	EXPECT_EQ(EncodeSpec::parse("forall,>=,gp").sense(), Mode::Min);
	EXPECT_THROW(EncodeSpec::parse("forall,=,gp"), std::invalid_argument);
	EXPECT_THROW(EncodeSpec::parse("forall,<"), std::invalid_argument);
}

// ---- evaluation ----

TEST(Evaluate, AtomsAndConnectives)
{
	Assignment a;
	a.reals["v"] = Q("1/2");
	EXPECT_FALSE(evaluate(atom(P("v"), Rel::Gt, P("1/2")), a));
	EXPECT_TRUE(evaluate(atom(P("v"), Rel::Ge, P("1/2")), a));

	a.reals["v"] = Q("1/3");
	a.bools["p"] = false;
	Expr zero = implies(lnot(bvar("p")), atom(P("v"), Rel::Eq, P("0")));
	EXPECT_FALSE(evaluate(zero, a));
	a.bools["p"] = true;
	EXPECT_TRUE(evaluate(zero, a));
	EXPECT_TRUE(evaluate(iff(bvar("p"), t_true()), a));
	EXPECT_FALSE(evaluate(or_of({}), a));
	EXPECT_TRUE(evaluate(and_of({}), a));

	EXPECT_THROW(evaluate(atom(P("w"), Rel::Eq, P("0")), a), MissingVariable);
}

TEST(Evaluate, UndeclaredVariablesAreReported)
{
	EtrFormula f = trivial();
	f.body = atom(P("y"), Rel::Gt, P("0"));
	EXPECT_THROW(f.check_declared(), std::invalid_argument);
}

// ---- encoding examples ----

TEST(Encode, TargetOnlyModel)
{
	Pmdp m = target_only();
	for (const auto &spec : EncodeSpec::all()) {
		EtrFormula f = encode(m, {"T"}, spec);
		Assignment a = witness_assignment(m, {"T"}, spec, {});
		EXPECT_EQ(a.reals.at(v_var("T")), 1);
		// 1 bound 1/2 holds only for the lower bounds
		EXPECT_EQ(evaluate(f, a), !spec.upper()) << spec.str();
	}
}

TEST(Encode, LoopShapeAndWitness)
{
	Pmdp m = loop_pmc();
	EtrFormula f = encode(m, {"T"}, EncodeSpec::parse("forall,>,gp"));
	EXPECT_EQ(f.reals, (std::set<std::string>{"p", v_var("s"), v_var("T")}));
	EXPECT_TRUE(f.bools.empty());

	Assignment a = witness_assignment(m, {"T"}, EncodeSpec::parse("forall,>,gp"), {{"p", Q("1/2")}});
	EXPECT_EQ(a.reals.at(v_var("s")), 1);
	EXPECT_EQ(a.reals.at(v_var("T")), 1);
	EXPECT_TRUE(evaluate(f, a));

	EncodeSpec wd = EncodeSpec::parse("forall,>,wd");
	Assignment z = witness_assignment(m, {"T"}, wd, {{"p", 0}});
	EXPECT_FALSE(z.bools.at(p_var("s")));
	EXPECT_EQ(z.reals.at(v_var("s")), 0);
	EXPECT_FALSE(evaluate(encode(m, {"T"}, wd), z));

	EXPECT_THROW(witness_assignment(m, {"T"}, EncodeSpec::parse("forall,>,gp"), {{"p", 0}}), EncodeError);
}

TEST(Encode, MossWdHasRanking)
{
	Pmdp m = moss_family(1);
	EtrFormula f = encode(m, m.target("T"), EncodeSpec::parse("forall,<,wd"));
	for (const auto &s : m.states) {
		EXPECT_TRUE(f.bools.count(p_var(s)));
		EXPECT_TRUE(f.reals.count(r_var(s)));
	}
	std::string text = emit_smtlib(f);
	EXPECT_NE(text.find("(= |p[s1]| (or"), std::string::npos);
	EXPECT_NE(text.find("(< |r[s1]| |r[s2]|)"), std::string::npos);
}

TEST(Encode, RejectsNonSimpleModels)
{
	Pmdp m;
	m.add_state("s");
	m.initial = "s";
	m.add_edge("s", kDefaultAction, "T", P("x*y"));
	m.add_edge("s", kDefaultAction, "s", P("1 - x*y"));
	m.add_edge("T", kDefaultAction, "T", 1);
	EXPECT_THROW(encode(m, {"T"}, EncodeSpec{}), EncodeError);
	EXPECT_THROW(encode(loop_pmc(), {"nowhere"}, EncodeSpec{}), EncodeError);
}

// ---- SMT-LIB ----

TEST(Smtlib, Goldens)
{
	EXPECT_EQ(emit_smtlib(trivial()), slurp(kGolden + "trivial.smt2"));
	EXPECT_EQ(emit_smtlib(encode(loop_pmc(), {"T"}, EncodeSpec::parse("forall,>,gp"))),
	          slurp(kGolden + "loop_forall_gt_gp.smt2"));
	Pmdp moss = moss_family(1);
	EXPECT_EQ(emit_smtlib(encode(moss, moss.target("T"), EncodeSpec::parse("forall,<,wd"))),
	          slurp(kGolden + "moss1_forall_lt_wd.smt2"));
}

TEST(Smtlib, DeterministicAndReparsable)
{
	std::vector<std::pair<Pmdp, StateSet>> models = {{loop_pmc(), {"T"}}, {moss_family(2), {"s3"}}};
	std::mt19937 rng(4);
	for (int k = 0; k < 4; k++) {
		Pmdp m = random_simple_pmdp(rng, 5, 2, 2);
		models.emplace_back(m, m.target("T"));
	}
	for (const auto &[m, T] : models)
		for (const auto &spec : EncodeSpec::all()) {
			EtrFormula f = encode(m, T, spec);
			std::string a = emit_smtlib(f), b = emit_smtlib(encode(m, T, spec));
			EXPECT_EQ(a, b);
			EtrFormula back = parse_smtlib(a);
			EXPECT_EQ(back.reals, f.reals);
			EXPECT_EQ(back.bools, f.bools);
			EXPECT_EQ(emit_smtlib(back), a) << spec.str();
		}
	EtrFormula t = trivial();
	EXPECT_TRUE(structurally_equal(parse_smtlib(emit_smtlib(t)).body, t.body));
	EXPECT_THROW(parse_smtlib("(assert (> x"), ParseError);
}

// ---- witness soundness against brute force ----

// the optimum the spec's inner quantifier reduces to, computed by the test
// reference solver
static bool accepted(const Pmdp &m, const StateSet &T, const EncodeSpec &spec, const Instantiation &u)
{
	auto [lo, hi] = ref_minmax(m, T, u);
	return holds(spec.sense() == Mode::Max ? hi : lo, spec.bound, Q("1/2"));
}

static std::vector<std::pair<Pmdp, StateSet>> small_models()
{
	std::vector<std::pair<Pmdp, StateSet>> out = {{loop_pmc(), {"T"}}, {moss_family(1), {"s2"}},
	                                              {moss_family(2), {"s3"}}};
	// threshold gadgets put the values around 1/2 so both verdicts occur
	GadgetOutput th = threshold_gadget(moss_family(1), "T", Q("3/4"));
	out.emplace_back(th.model, th.target_states());
	for (int seed = 1; seed <= 12; seed++) {
		std::mt19937 rng(seed * 31);
		Pmdp m = random_simple_pmdp(rng, 5, 2, 2);
		out.emplace_back(m, m.target("T"));
	}
	return out;
}

TEST(Witness, SatisfiesExactlyWhenAccepted)
{
	size_t yes = 0, no = 0;
	for (const auto &[m, T] : small_models())
		for (const auto &spec : EncodeSpec::all()) {
			EtrFormula f = encode(m, T, spec);
			for (const auto &u : grid(m.params, 5, spec.space == EncodeSpec::GP)) {
				bool acc = accepted(m, T, spec, u);
				Assignment a = witness_assignment(m, T, spec, u);
				EXPECT_EQ(evaluate(f, a), acc) << spec.str() << " " << to_string(u);
				(acc ? yes : no)++;
			}
		}
	EXPECT_GT(yes, 100u);
	EXPECT_GT(no, 100u);
}

TEST(Witness, PerturbedValuesCannotRescueARejection)
{
	std::mt19937 rng(77);
	for (const auto &[m, T] : small_models())
		for (const auto &spec : EncodeSpec::all()) {
			EtrFormula f = encode(m, T, spec);
			for (const auto &u : grid(m.params, 3, spec.space == EncodeSpec::GP)) {
				if (accepted(m, T, spec, u))
					continue;
				Assignment base = witness_assignment(m, T, spec, u);
				for (int k = 0; k < 100; k++) {
					Assignment a = base;
					for (const auto &s : m.states) {
						Rational &v = a.reals[v_var(s)];
						if (k % 2)
							v = random_rational(rng, 12);
						else
							v += (random_rational(rng, 12) - Q("1/2")) / 4;
						if (spec.ranked() && rng() % 4 == 0)
							a.bools[p_var(s)] = !a.bools[p_var(s)];
					}
					ASSERT_FALSE(evaluate(f, a)) << spec.str() << " " << to_string(u) << " try " << k;
				}
			}
		}
}

// ---- external solver ----

TEST(Solver, UnavailableWithoutCommand)
{
	SolverConfig cfg;
	EXPECT_FALSE(cfg.configured());
	EXPECT_EQ(solve_external(trivial(), cfg).status, SolveStatus::Unavailable);
	cfg.command = "/nonexistent/solver-binary";
	EXPECT_EQ(solve_external(trivial(), cfg).status, SolveStatus::Unavailable);
}

TEST(Solver, FakeSolverVerdicts)
{
	SolverConfig cfg;
	cfg.command = "sh " + kData + "/fake_solver.sh";
	cfg.timeout_s = 2;

	EtrFormula f = trivial();
	f.comment = "toy sat";
	SolveResult sat = solve_external(f, cfg);
	ASSERT_EQ(sat.status, SolveStatus::Sat) << sat.message;
	EXPECT_EQ(sat.model.reals.at("x"), Q("1/2"));
	EXPECT_TRUE(sat.model.bools.at("b"));
	EXPECT_EQ(sat.irrational, std::vector<std::string>{"y"});

	f.comment = "unsat";
	EXPECT_EQ(solve_external(f, cfg).status, SolveStatus::Unsat);
	f.comment = "unknown";
	EXPECT_EQ(solve_external(f, cfg).status, SolveStatus::Unknown);
	f.comment = "garbage";
	EXPECT_EQ(solve_external(f, cfg).status, SolveStatus::Error);
	f.comment = "sleep";
	cfg.timeout_s = 0.5;
	EXPECT_EQ(solve_external(f, cfg).status, SolveStatus::Timeout);
}
