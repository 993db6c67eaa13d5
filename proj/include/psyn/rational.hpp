#pragma once

#include <gmpxx.h>

#include <cassert>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psyn {

using Rational = mpq_class;

struct ParseError : std::runtime_error {
	size_t pos;
	ParseError(size_t pos, const std::string &msg)
		: std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
};

// Accepts "a", "a/b", "-a/b" and decimals like "0.25" or "-1.5".
Rational parse_rational(std::string_view text);

// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational &q);

bool is_normalized(const Rational &q);

inline void audit(const Rational &q)
{
#ifndef NDEBUG
	assert(is_normalized(q));
#else
	(void)q;
#endif
}

Rational binomial(unsigned n, unsigned k);

// canonical n/d
inline Rational frac(long n, long d)
{
	Rational q(n, d);
	q.canonicalize();
	return q;
}

} // namespace psyn
