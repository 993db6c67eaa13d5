#pragma once

#include "psyn/analysis.hpp"
#include "psyn/io.hpp"
#include "psyn/parse.hpp"

#include <random>

namespace psyn::test {

inline Rational Q(const char *s) { return parse_rational(s); }
inline Polynomial P(const char *s) { return parse_poly(s); }

// Dense reference solver written independently of the analysis module:
// iterate the "can reach" fixpoint, then plain Gauss-Jordan over all
// remaining states. Input must be parameter-free.
std::vector<Rational> ref_mc_values(const Pmdp &mc, const StateSet &target);
Rational ref_mc(const Pmdp &mc, const StateSet &target);

// Enumerates every deterministic scheduler through induced_pmc/instantiate
// and the reference solver. Returns {min, max} at the initial state.
std::pair<Rational, Rational> ref_minmax(const Pmdp &m, const StateSet &target, const Instantiation &u);
std::vector<Scheduler> all_schedulers(const Pmdp &m);

// one-state loop pMC: s --(1-p)--> s, s --p--> T
Pmdp loop_pmc();

// random simple pMDP over the given parameters: every row is either a
// Dirac, a constant split or an x / 1-x split; the last two states are
// an absorbing target "T" and sink "bot"
Pmdp random_simple_pmdp(std::mt19937 &rng, int states, int max_actions, int params);

// k-point uniform grid over each parameter, interior (gp) or closed (wd)
std::vector<Instantiation> grid(const std::vector<std::string> &params, int points, bool interior);

Rational random_rational(std::mt19937 &rng, int den = 16);

} // namespace psyn::test
