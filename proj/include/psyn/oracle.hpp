#pragma once

#include "psyn/analysis.hpp"

#include <functional>

namespace psyn {

struct OracleError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Exact rational sample points. Each axis is a uniform mesh of `resolution`
// points over the parameter's interval (endpoints dropped when the space
// excludes them) plus the mandatory points that fall inside. Points are
// classified against the space before use.
struct Grid {
	ParamSpace space = ParamSpace::wd();
	unsigned resolution = 11;
	std::vector<Rational> mandatory;
	std::map<std::string, std::vector<Rational>> axes;

	static constexpr unsigned kDefaultResolution = 11; // 11 points on wd, 9 interior on gp
	static Grid make(const Pmdp &m, const ParamSpace &space, unsigned resolution = kDefaultResolution,
	                 std::vector<Rational> mandatory = {});

	size_t raw_size() const; // product of the axis lengths
	// stops early when f returns false; returns the number of points visited
	// and counts points outside the space in *skipped
	size_t for_each(const Pmdp &m, const std::function<bool(const Instantiation &)> &f, size_t *skipped = nullptr) const;
	std::vector<Instantiation> points(const Pmdp &m) const;
	std::string str() const;
};

enum class Quant { Exists, Forall };
const char *to_string(Quant q);

struct Problem {
	Quant q1 = Quant::Exists, q2 = Quant::Exists;
	Rel rel = Rel::Ge;
	Rational lambda = frac(1, 2);
	std::string str() const; // "exists u forall sigma: Pr >= 1/2"
};

struct Verdict {
	enum Answer { Yes, NoOnGrid, HoldsOnGrid } answer = NoOnGrid;
	Problem problem;
	bool robust = false;          // outer quantifier ranges over schedulers
	bool exact = false;           // decided by exact witnesses rather than grid exhaustion
	std::optional<Instantiation> point; // witness (yes) or refuting point
	std::optional<Scheduler> sigma;
	std::optional<Rational> value;      // Pr at (point, sigma)
	std::string caveat;
	size_t points = 0, skipped = 0, schedulers = 0;
	double seconds = 0;

	std::string answer_str() const; // "yes", "no-on-grid", "holds-on-grid"
	std::string report() const;     // key: value lines
};

struct OracleConfig {
	size_t enum_cap = kDefaultEnumCap;
	size_t max_points = 2'000'000;
};

// exists/forall u in the grid, exists/forall sigma: Pr^sigma_u(<>T) rel lambda.
// The sigma quantifier is exact: min/max over every deterministic
// memoryless scheduler (for "=" under exists sigma, any value in [min, max]).
Verdict decide_reach(const Pmdp &m, const StateSet &target, const Problem &p, const Grid &grid,
                     const OracleConfig &cfg = {});

// Q1 over schedulers (exact, every deterministic memoryless one), Q2 over
// the grid.
Verdict decide_rob_reach(const Pmdp &m, const StateSet &target, const Problem &p, const Grid &grid,
                         const OracleConfig &cfg = {});

struct CsrgBounds {
	Rational lower, upper;
	std::optional<RandStrategy> best_sigma; // attains lower
	std::optional<RandStrategy> best_tau;   // attains upper
};

// stationary strategies with probabilities in multiples of 1/resolution
std::vector<RandStrategy> strategy_grid(const std::vector<std::string> &states,
                                        const std::map<std::string, std::vector<std::string>> &acts,
                                        unsigned resolution);
// exact reachability under fixed strategies for both players
Rational csrg_play(const Csrg &g, const RandStrategy &sigma, const RandStrategy &tau);
// MDP obtained by fixing one player's stationary strategy
Pmdp csrg_fix_player1(const Csrg &g, const RandStrategy &sigma);
Pmdp csrg_fix_player2(const Csrg &g, const RandStrategy &tau);
CsrgBounds csrg_value_bounds(const Csrg &g, unsigned resolution);

} // namespace psyn
