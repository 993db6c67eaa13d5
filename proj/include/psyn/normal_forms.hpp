#pragma once

#include "psyn/polynomial.hpp"

namespace psyn {

// x, or 1-x when negated
struct Atom {
	std::string var;
	bool negated = false;
	Polynomial poly() const { return negated ? Polynomial::one_minus(var) : Polynomial::var(var); }
	std::string str() const { return negated ? "(1-" + var + ")" : var; }
	bool operator==(const Atom &) const = default;
};

struct Summand {
	Rational alpha;
	std::vector<Atom> factors;
	Polynomial product() const;
};

// f = sum_i alpha_i * prod(factors_i) + beta, with alpha_i > 0 and beta <= 0.
struct PositiveCombination {
	std::vector<Summand> summands;
	Rational beta;
	Rational N; // positive integer
	Rational mu;
	std::string dummy; // non-empty iff a fresh parameter was introduced

	Polynomial reconstruct() const;
	Rational alpha_sum() const;
	// (mu - beta) / N
	Rational scaled_threshold() const;
};

inline const char *kDummyParam = "$u";

PositiveCombination chonev_decompose(const Polynomial &f, const Rational &mu);

// f = sum_k p_k C(n,k) x^(n-k) (1-x)^k
struct BinomialRep {
	std::string var;
	unsigned n = 0;
	std::vector<Rational> p;
	Polynomial expand() const;
};

struct ElevationCapExceeded : std::runtime_error {
	unsigned cap;
	explicit ElevationCapExceeded(unsigned cap)
		: std::runtime_error("binomial representation: no coefficients in [0,1] after " +
		                     std::to_string(cap) + " degree elevations"),
		  cap(cap) {}
};

inline constexpr unsigned kDefaultElevationCap = 512;

BinomialRep binomial_representation(const Polynomial &f, unsigned cap = kDefaultElevationCap);

} // namespace psyn
