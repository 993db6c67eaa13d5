#pragma once

#include "psyn/compiled.hpp"
#include "psyn/etr.hpp"
#include "psyn/ratfunc.hpp"

namespace psyn {

using StateSet = std::set<std::string>;

// ---- graph algorithms on NumMdp (edges = positive entries) ----

// states with a path to the target using any action (choice == nullptr) or
// only the chosen action
std::vector<char> can_reach(const NumMdp &m, const std::vector<int> *choice = nullptr);
// states from which every scheduler reaches the target with positive probability
std::vector<char> positive_under_all(const NumMdp &m);
// strongly connected components of the graph restricted to `alive` states
// and chosen actions, in reverse topological order (sinks first)
std::vector<std::vector<int>> sccs(const NumMdp &m, const std::vector<int> &choice, const std::vector<char> &alive);
// maximal end components inside `within` (actions leaving `within` are dropped)
std::vector<std::vector<int>> mecs(const NumMdp &m, const std::vector<char> &within);

// ---- Markov chains ----

// exact values of every state under a memoryless choice vector
std::vector<Rational> mc_values(const NumMdp &m, const std::vector<int> &choice);
// the model must be a parameter-free MC
Rational reach_prob_mc(const Pmdp &m, const StateSet &target);

// ---- MDPs ----

enum class Mode { Min, Max, Mc };
const char *to_string(Mode m);

inline constexpr size_t kDefaultEnumCap = size_t(1) << 16;

struct NumOptimum {
	std::vector<Rational> values;
	std::vector<int> choice;
};

NumOptimum enumerate_optimum(const NumMdp &m, Mode mode);
NumOptimum policy_iteration(const NumMdp &m, Mode mode);
// enumeration when the scheduler count is at most cap, else policy iteration
NumOptimum optimum(const NumMdp &m, Mode mode, size_t cap = kDefaultEnumCap);

struct ValueResult {
	Rational value;
	std::optional<Scheduler> witness;
	Mode mode = Mode::Mc;
};

// parameter-free input; Mc mode requires a pMC
ValueResult minmax_reach(const Pmdp &m, const StateSet &target, Mode mode, size_t cap = kDefaultEnumCap);

// ---- solution functions ----

struct SolutionFn {
	std::map<std::string, RationalFunction> sol;
	ParamSpace domain = ParamSpace::gp();
	const RationalFunction &at(const std::string &s) const { return sol.at(s); }
};

SolutionFn solution_function(const Pmdp &m, const StateSet &target);

// ---- zero states and target complement ----

struct ZeroSets {
	StateSet forall_zero; // no path to the target
	StateSet exists_zero; // some scheduler avoids the target surely
};

// on the graph-preserving topology
ZeroSets zero_states(const Pmdp &m, const StateSet &target);

struct ComplementResult {
	Pmdp model;
	StateSet target; // T'
	bool changed = false; // model differs from the input (end components collapsed)
	std::string note;
};

// max Pr(<>T) = 1 - min Pr(<>T') at every graph-preserving instantiation.
// End components avoiding T are collapsed into single states that may
// leave or stop in a fresh sink; T' is the set of states without a path
// to T in the collapsed model.
ComplementResult complement_target(const Pmdp &m, const StateSet &target);

// ---- fixed-scheduler optimality ----

enum class Where { Somewhere, Everywhere };

struct OptimalityReport {
	Where where = Where::Everywhere;
	// everywhere: false once a sample refutes; somewhere: true once a sample witnesses
	bool holds = false;
	bool conclusive = false; // decided by a sample rather than only passed on all of them
	std::optional<Instantiation> point; // refuting or witnessing sample
	size_t passed = 0, failed = 0, skipped = 0;
	std::vector<std::string> warnings;
	// somewhere: satisfiable iff sigma is optimal at some u in R
	// everywhere: unsatisfiable iff sigma is optimal on all of R
	EtrFormula formula;
	// "holds", "holds-on-samples", "refuted", "refuted-on-samples"
	std::string verdict() const;
};

// Phi_sigma as a formula over the parameters: the induced solution
// functions satisfy the local optimality inequalities at every non-target
// state. For min, states where some scheduler avoids the target surely are
// additionally required to evaluate to 0.
Expr phi_sigma(const Pmdp &m, const StateSet &target, const Scheduler &sigma, Mode sense,
               std::vector<std::string> *warnings = nullptr, const std::vector<Instantiation> *probes = nullptr);
Expr phi_space(const Pmdp &m, const ParamSpace &r);

OptimalityReport check_scheduler_optimality(const Pmdp &m, const Scheduler &sigma, const StateSet &target, Mode sense,
                                            Where where, const ParamSpace &r, const std::vector<Instantiation> &samples);

struct OssReport {
	bool gap = false;
	std::optional<Instantiation> gap_at;
	Rational best_at_gap; // optimum at the gap
	size_t covered = 0;
	EtrFormula formula; // exists u: Phi_R and every Phi_sigma fails
};

// At each sample some member of omega must attain the maximum. Stops at the
// first gap.
OssReport verify_oss(const Pmdp &m, const StateSet &target, const std::vector<Scheduler> &omega,
                     const ParamSpace &r, const std::vector<Instantiation> &samples, Mode sense = Mode::Max);

// variable names used in formulas
std::string v_var(const std::string &s);
std::string p_var(const std::string &s);
std::string r_var(const std::string &s);

} // namespace psyn
