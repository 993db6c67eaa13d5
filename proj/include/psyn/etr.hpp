#pragma once

#include "psyn/polynomial.hpp"

#include <memory>
#include <optional>

namespace psyn {

enum class Rel { Lt, Le, Eq, Ge, Gt };

const char *to_string(Rel r);
Rel parse_rel(std::string_view s); // "<", "<=", "=", ">=", ">"
// a rel b for exact rationals
bool holds(const Rational &a, Rel r, const Rational &b);
// relation with operands swapped: a r b <=> b flip(r) a
Rel flip(Rel r);
// a r b <=> !(a negate(r) b); Eq has no single-relation negation
Rel negate(Rel r);

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
	enum Kind { True, False, BoolVar, Atom, Not, And, Or, Implies, Iff } kind;
	std::string var;      // BoolVar
	Polynomial lhs, rhs;  // Atom
	Rel rel = Rel::Eq;    // Atom
	std::vector<Expr> kids;
};

Expr t_true();
Expr t_false();
Expr bvar(const std::string &name);
Expr atom(const Polynomial &lhs, Rel r, const Polynomial &rhs);
Expr lnot(Expr e);
// flattening; and_of({}) = true, and_of({e}) = e
Expr and_of(std::vector<Expr> es);
Expr or_of(std::vector<Expr> es);
Expr implies(Expr a, Expr b);
Expr iff(Expr a, Expr b);

bool structurally_equal(const Expr &a, const Expr &b);

// Quantifier-free body; the outer existential over every declared
// variable is implicit.
struct EtrFormula {
	std::set<std::string> reals;
	std::set<std::string> bools;
	Expr body = t_true();
	std::string comment; // emitted as a leading ';' line

	void declare_real(const std::string &v) { reals.insert(v); }
	void declare_bool(const std::string &v) { bools.insert(v); }
	// throws std::invalid_argument naming the first undeclared variable
	void check_declared() const;
	size_t size() const; // node count
};

struct Assignment {
	std::map<std::string, Rational> reals;
	std::map<std::string, bool> bools;
};

struct MissingVariable : std::runtime_error {
	using std::runtime_error::runtime_error;
};

bool evaluate(const Expr &e, const Assignment &a);
bool evaluate(const EtrFormula &f, const Assignment &a);

// SMT-LIB 2, logic QF_NRA. Declarations in sorted order, one assert per
// top-level conjunct, then (check-sat) and (get-model).
std::string emit_smtlib(const EtrFormula &f);
// inverse of emit_smtlib for documents it produced (and solver models of
// the same shape); throws ParseError
EtrFormula parse_smtlib(const std::string &text);

enum class SolveStatus { Sat, Unsat, Unknown, Unavailable, Timeout, Error };
const char *to_string(SolveStatus s);

struct SolverConfig {
	std::string command; // whitespace separated argv, reads SMT-LIB on stdin
	double timeout_s = 60;
	// PSYN_SMT_SOLVER, PSYN_SMT_TIMEOUT
	static SolverConfig from_env();
	bool configured() const { return !command.empty(); }
};

struct SolveResult {
	SolveStatus status = SolveStatus::Unavailable;
	Assignment model;           // sat only; variables with non-rational values are absent
	std::vector<std::string> irrational; // names whose model value was not a rational literal
	std::string message;
};

SolveResult solve_external(const EtrFormula &f, const SolverConfig &cfg);

} // namespace psyn
