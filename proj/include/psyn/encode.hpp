#pragma once

#include "psyn/analysis.hpp"

namespace psyn {

// Which reachability question a formula decides:
//   exists u in space. Q sigma. Pr^sigma_u(<>T) bound 1/2
// bound is one of <, <=, >=, >.
struct EncodeSpec {
	enum Quant { Forall, Exists } inner = Forall;
	Rel bound = Rel::Lt;
	enum Space { GP, WD } space = Space::GP;

	bool upper() const { return bound == Rel::Lt || bound == Rel::Le; }
	// the optimum the inner quantifier reduces to
	Mode sense() const { return (inner == Forall) == upper() ? Mode::Max : Mode::Min; }
	// uses the p/r path-ranking variables
	bool ranked() const { return space == WD || (inner == Exists && !upper()); }
	ParamSpace param_space() const { return space == GP ? ParamSpace::gp() : ParamSpace::wd(); }
	std::string str() const; // e.g. "forall,<,gp"
	static EncodeSpec parse(std::string_view s); // inverse of str; throws std::invalid_argument
	// every combination
	static std::vector<EncodeSpec> all(); // the ten written-out ones first
	bool extrapolated() const; // not one of the five written-out families (two strictnesses each)
};

struct EncodeError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

// throws EncodeError when m is not simple or a target is not a state of m
EtrFormula encode(const Pmdp &m, const StateSet &target, const EncodeSpec &spec);

// The assignment a satisfying model would take at u: the exact optimum for
// v, positivity for p, ranks |S| - distance for r. Throws EncodeError when
// u is outside the spec's space.
Assignment witness_assignment(const Pmdp &m, const StateSet &target, const EncodeSpec &spec, const Instantiation &u);

} // namespace psyn
