#pragma once

#include "psyn/gadgets.hpp"

namespace psyn::detail {

// first of base, base_1, base_2, ... that is not a state of m
std::string fresh_state(const Pmdp &m, const std::string &base);
std::string fresh_param(const Pmdp &m, const std::string &base);

void require_open_unit(const Rational &lambda, const char *who);

// sets generated_by and mirrors the certificate into the metadata
void finish(GadgetOutput &out, const std::string &by);

void self_loop(Pmdp &m, const std::string &s);

bool is_dirac(const Pmdp::Row &row);

// Copies the states of g (except its initial state) into host, renamed with
// prefix or through redirect, and returns the renamed initial row. g's
// initial state must have no incoming edges.
Pmdp::Row embed(Pmdp &host, const Pmdp &g, const std::string &prefix,
                const std::map<std::string, std::string> &redirect);

} // namespace psyn::detail
