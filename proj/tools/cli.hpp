#pragma once

#include "psyn/encode.hpp"
#include "psyn/gadgets.hpp"
#include "psyn/io.hpp"
#include "psyn/oracle.hpp"

#include <iosfwd>

namespace psyn::cli {

enum Exit : int {
	kOk = 0,
	kUsage = 1,
	kModelError = 2,
	kVerdictNo = 3,
	kSolverUnavailable = 4,
};

// Precedence: flags > environment > config file > defaults.
struct Config {
	enum Format { Human, Structured };

	std::string solver;
	double timeout_s = 60;
	size_t enum_cap = kDefaultEnumCap;
	unsigned resolution = Grid::kDefaultResolution;
	std::string out_dir = ".";
	Format format = Human;

	// JSON object with any of: solver, timeout, enum_cap, resolution,
	// out_dir, format ("human" | "structured")
	void apply_file(const std::string &path);
	// PSYN_SMT_SOLVER, PSYN_SMT_TIMEOUT, PSYN_ENUM_CAP, PSYN_RESOLUTION,
	// PSYN_OUT_DIR, PSYN_FORMAT
	void apply_env();
	void check() const; // throws std::invalid_argument
	SolverConfig solver_config() const { return {solver, timeout_s}; }
};

// args exclude the program name
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// file path, or a built-in name: loop, pyramid, chonev, moss<N>
AnyModel resolve_model(const std::string &name);
std::vector<std::string> builtin_models();

// DIMACS CNF: "c" comment lines, "p cnf <vars> <clauses>", clauses ending in 0
Cnf parse_dimacs(const std::string &text);

// one polynomial per line, "#" comments
std::vector<Polynomial> parse_poly_lines(const std::string &text);

// "exists,forall,>=,1/2"
Problem parse_problem(const std::string &text);

} // namespace psyn::cli
