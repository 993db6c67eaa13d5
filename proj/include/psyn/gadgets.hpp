#pragma once

#include "psyn/analysis.hpp"
#include "psyn/normal_forms.hpp"

#include <functional>

namespace psyn {

struct GadgetError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

// Result of a model construction. The certificate is a flat key/value
// description that is also copied into model.metadata (keys prefixed with
// "cert."). Transport maps are empty when the construction has none.
struct GadgetOutput {
	Pmdp model;
	std::string target = "T"; // name of the target set in model.targets
	Rational threshold;
	std::map<std::string, std::string> certificate;
	// polynomials the construction was built from, by role
	std::map<std::string, Polynomial> polys;

	// source instantiation -> output instantiation, and back
	std::function<Instantiation(const Instantiation &)> transport;
	std::function<Instantiation(const Instantiation &)> transport_back;
	// source value (reachability probability or polynomial value) -> output value
	std::function<Rational(const Rational &)> value_map;
	// source scheduler -> output scheduler, and back
	std::function<Scheduler(const Scheduler &)> scheduler_map;
	std::function<Scheduler(const Scheduler &)> scheduler_back;

	const StateSet &target_states() const { return model.target(target); }
	void certify(const std::string &key, const std::string &value);
};

// ---- thresholds ----

// Prepends one state so that Pr' ⋈ λ iff Pr ⋈ 1/2. For λ <= 1/2 the new
// initial state moves 2λ to the old one and the rest to a sink
// (Pr' = 2λ·Pr); for λ > 1/2 it moves 2(1-λ) to the old one and the rest to
// a fresh target state (Pr' = 2λ-1 + 2(1-λ)·Pr). λ = 1/2 is the identity.
GadgetOutput threshold_gadget(const Pmdp &m, const std::string &target, const Rational &lambda);

// The opposite direction: Pr' ⋈ 1/2 iff Pr ⋈ λ.
// λ >= 1/2: 1/(2λ) to the old initial state, the rest to a sink.
// λ < 1/2: (1/2-λ)/(1-λ) to a fresh target state, the rest to the old one.
GadgetOutput normalize_threshold(const Pmdp &m, const std::string &target, const Rational &lambda);

// ---- polynomials as reachability ----

// Simple acyclic pMC with f[u] ⋈ μ iff Pr ⋈ λ for all u in [0,1]^X.
// value_map sends f[u] to Pr (an increasing affine map).
GadgetOutput poly_to_pmc(const Polynomial &f, const Rational &mu, const Rational &lambda);

// Same solution set over the open box for an arbitrary pMC: sol = h/g,
// sign-normalised so that g > 0, then poly_to_pmc(h - (g-1)λ, λ, λ).
// probes: points of (0,1)^X used to fix the sign of g (default: all 1/2).
GadgetOutput nonsimple_pmc_to_simple_acyclic(const Pmdp &m, const std::string &target, const Rational &lambda,
                                             const std::vector<Instantiation> &probes = {});

// Pyramid pMC whose solution function is exactly f (univariate, adequate).
// Factors x^e (1-x)^d are peeled off first and become chains in front of
// the pyramid.
GadgetOutput adequate_poly_to_pmc(const Polynomial &f, unsigned cap = kDefaultElevationCap);

// Chain of two states per parameter in front of the initial state. Values at
// graph-preserving points are unchanged; any parameter at 0 or 1 gives 0.
GadgetOutput gp_gadget(const Pmdp &m, const std::string &target);

// ---- non-determinism ----

// Binary-decision form: at most two actions per state, and states with two
// actions only have Dirac rows. A state with k actions that is not already
// binary becomes a chain <s,1> = s, <s,2>, ..., <s,k>; at <s,i> (i < k)
// action "next" moves to <s,i+1> and "pick" to the row of the i-th action,
// <s,k> carries the row of the last action.
GadgetOutput to_binary(const Pmdp &m, const std::string &target);
bool is_binary(const Pmdp &m, std::string *why = nullptr);

// Replaces each two-way Dirac choice at s by x_s / 1-x_s, with x_s = 1
// meaning the first action. Throws GadgetError unless is_binary(m).
// scheduler_map turns a scheduler into the corner instantiation of the
// fresh parameters; transport_back reads a scheduler-like corner back.
GadgetOutput binary_to_pmc(const Pmdp &m, const std::string &target);
// the fresh parameter of each two-action state, in state order
std::map<std::string, std::string> choice_params(const GadgetOutput &pmc);
// corner instantiation of the fresh parameters for sigma, merged into u
Instantiation corner_of(const GadgetOutput &pmc, const Scheduler &sigma, const Instantiation &u);

// ---- stochastic games ----

struct CsrgOutput : GadgetOutput {
	// parameter of player-II action b at state s; absent for the implicit last action
	std::map<std::pair<std::string, std::string>, std::string> param_of;
	std::function<Instantiation(const RandStrategy &)> phi;
	std::function<RandStrategy(const Instantiation &)> phi_inv;
};

// Parameters are player-II actions. Action a at s leads through a fan-out
// over B_s (one parameter per action but the last, reweighted) to states
// s_ab that carry the game kernel.
CsrgOutput csrg_to_pmdp(const Csrg &g);

// Distribution over the states of `keep` reached from s under action a when
// the intermediate states (those not in keep) are passed through. The model
// must be parameter-free and acyclic outside keep.
std::map<std::string, Rational> merged_row(const Pmdp &inst, const std::string &s, const std::string &a,
                                           const std::set<std::string> &keep);

// ---- 3SAT ----

// literals are +-(variable index), variables are 1-based
struct Cnf {
	int vars = 0;
	std::vector<std::vector<int>> clauses;
	bool satisfied_by(const std::vector<bool> &assignment) const; // assignment[0] unused
	std::string str() const;
};

// brute force; empty when unsatisfiable
std::optional<std::vector<bool>> find_assignment(const Cnf &phi);

// Simple pMC with 3m + 2k + 3 states; sat iff some well-defined u gives
// Pr > 2/3 (threshold 2/3).
GadgetOutput sat_to_pmc(const Cnf &phi);
// y_i = I(x_i); one literal per clause that I makes true carries the clause mass
Instantiation sat_instantiation(const Cnf &phi, const std::vector<bool> &assignment);

struct TrivialSat : GadgetError {
	std::vector<bool> assignment;
	TrivialSat(const std::string &msg, std::vector<bool> a) : GadgetError(msg), assignment(std::move(a)) {}
};

// Single-parameter pMDP; sat iff some scheduler has Pr > 1/2 for all u.
// States init, X1..Xn, T, F, actions alpha / beta; the polynomial edges are
// replaced by poly_to_pmc sub-gadgets (μ = λ = 1/2). polys holds
// "f_<i>_alpha" / "f_<i>_beta" before the replacement.
GadgetOutput sat_to_robust_pmdp(const Cnf &phi);
Scheduler robust_scheduler_of(const std::vector<bool> &assignment);
std::vector<bool> robust_assignment_of(const Scheduler &sigma, int vars);

// ---- scheduler families ----

// chain s1..s_{n+1} plus bot; at s_i action a moves x_i forward, b moves 1-x_i
Pmdp moss_family(int n);
// the scheduler that is optimal at the given corner (x_i = 1 -> a)
Scheduler moss_scheduler(int n, const Instantiation &corner);

// ---- inequality systems ----

struct ConstraintSystem {
	enum Relation { EqZero, LeZero, LtZero };
	enum Box { Open, Closed };
	std::vector<Polynomial> polys;
	Relation relation = LtZero;
	Box box = Closed;
	std::map<std::string, std::string> notes;

	std::set<std::string> variables() const;
	bool holds_at(const Valuation &u) const; // every polynomial satisfies the relation
	bool in_box(const Valuation &u) const;   // only the variables of the system
};

// ∃u ∀σ: Pr < 1/2 iff ∃u: all f_i[u] < 0. One action per polynomial at a
// fresh initial state, each leading into poly_to_pmc(f_i, 0, 1/2).
GadgetOutput ineqs_to_pmdp(const ConstraintSystem &fs);

// Two copies of the pMC behind a fresh initial state with actions a1 (copy
// for T1) and a2 (copy for T2). Requires λ2 < 1/2 < λ1.
GadgetOutput two_objective_to_forall(const Pmdp &m, const std::string &t1, const std::string &t2,
                                     const Rational &lambda1, const Rational &lambda2, Rel rel);

Polynomial quad_to_quartic(const std::vector<Polynomial> &fs);
// f(2x - 1) for every variable x: roots in [-1,1] map to roots in [0,1]
Polynomial shift_scale_box(const Polynomial &f);
// {f - d < 0, d - d1^2 < 0, ..., d_{L+3} - d_{L+4}^2 < 0, d_{L+4} - 1/2 < 0}
ConstraintSystem ineq_chain_with_delta(const Polynomial &f, unsigned L);
std::string delta_var(unsigned i); // 0 is d itself

} // namespace psyn
