#pragma once

#include "psyn/polynomial.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace psyn {

inline const std::string kDefaultAction = "tau";

struct ModelError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

using Instantiation = Valuation;

// "x=1/2,y=1/4"
std::string to_string(const Instantiation &u);

// Parametric MDP. A pMC is the special case with one enabled action per state.
struct Pmdp {
	using Row = std::map<std::string, Polynomial>;      // successor -> label
	using Choices = std::map<std::string, Row>;         // action -> row

	std::vector<std::string> states;
	std::vector<std::string> params; // sorted
	std::string initial;
	std::map<std::string, Choices> trans;
	std::map<std::string, std::set<std::string>> targets;
	std::map<std::string, std::string> metadata;

	void add_state(const std::string &s);
	void add_param(const std::string &x);
	// parallel edges are summed
	void add_edge(const std::string &s, const std::string &a, const std::string &t, const Polynomial &p);
	void add_target(const std::string &set, const std::string &s);

	bool has_state(const std::string &s) const;
	size_t state_index(const std::string &s) const;
	std::vector<std::string> actions(const std::string &s) const;
	const Row &row(const std::string &s, const std::string &a) const;
	Polynomial label(const std::string &s, const std::string &a, const std::string &t) const;
	bool is_pmc() const;
	bool is_parameter_free() const;
	const std::set<std::string> &target(const std::string &name) const;
	size_t num_schedulers_capped(size_t cap) const;

	// throws ModelError on dangling references, undeclared parameters or
	// states without an enabled action
	void validate() const;
};

struct EdgeRef {
	std::string from, action, to;
	bool operator==(const EdgeRef &) const = default;
	auto operator<=>(const EdgeRef &) const = default;
};

enum class InstKind { Invalid, WellDefined, GraphPreserving };

struct Classification {
	InstKind kind = InstKind::Invalid;
	std::vector<EdgeRef> zero_edges; // P^u_{=0}
	std::string reason;              // why invalid
	bool well_defined() const { return kind != InstKind::Invalid; }
	bool graph_preserving() const { return kind == InstKind::GraphPreserving; }
};

const char *to_string(InstKind k);

Classification classify_instantiation(const Pmdp &m, const Instantiation &u);

struct SimpleReport {
	bool simple = true;
	std::vector<std::string> violations;
};

SimpleReport check_simple(const Pmdp &m);

Pmdp instantiate(const Pmdp &m, const Instantiation &u);

struct Scheduler {
	std::map<std::string, std::string> choice;
	bool operator==(const Scheduler &) const = default;
	auto operator<=>(const Scheduler &) const = default;
	std::string str() const;
};

// first enabled action everywhere
Scheduler default_scheduler(const Pmdp &m);
void validate_scheduler(const Pmdp &m, const Scheduler &s);
Pmdp induced_pmc(const Pmdp &m, const Scheduler &sigma);

struct Interval {
	Rational lo = 0, hi = 1;
	bool lo_open = false, hi_open = false;
	bool contains(const Rational &v) const;
};

struct ParamSpace {
	enum Kind { WD, GP, EpsBox, Box } kind = WD;
	Rational eps;                        // EpsBox: [eps, 1-eps]
	std::map<std::string, Interval> box; // Box
	static ParamSpace wd() { return {WD, 0, {}}; }
	static ParamSpace gp() { return {GP, 0, {}}; }
	static ParamSpace eps_box(const Rational &e);
	bool contains(const Pmdp &m, const Instantiation &u) const;
	std::string str() const;
};

// Concurrent stochastic reachability game.
struct Csrg {
	std::vector<std::string> states;
	std::string initial;
	std::set<std::string> targets;
	std::map<std::string, std::vector<std::string>> acts1, acts2;
	// (s, a, b) -> distribution
	std::map<std::tuple<std::string, std::string, std::string>, std::map<std::string, Rational>> kernel;

	void validate() const;
};

// stationary randomised strategy: state -> action -> probability
struct RandStrategy {
	std::map<std::string, std::map<std::string, Rational>> dist;
	Rational prob(const std::string &s, const std::string &a) const;
};

} // namespace psyn
