#pragma once

#include "psyn/polynomial.hpp"

namespace psyn {

struct DivisionByZero : std::domain_error {
	using std::domain_error::domain_error;
};

// num/den without polynomial gcd; only monomial content and a scalar are
// cancelled. Equality is decided by cross-multiplication.
class RationalFunction {
public:
	RationalFunction() : num_(0), den_(1) {}
	RationalFunction(const Polynomial &num) : num_(num), den_(1) {}
	RationalFunction(const Rational &c) : num_(c), den_(1) {}
	RationalFunction(long c) : RationalFunction(Rational(c)) {}
	RationalFunction(int c) : RationalFunction(Rational(c)) {}
	RationalFunction(const Polynomial &num, const Polynomial &den);

	const Polynomial &num() const { return num_; }
	const Polynomial &den() const { return den_; }
	bool is_zero() const { return num_.is_zero(); }
	bool is_polynomial() const { return den_.is_constant(); }

	RationalFunction &operator+=(const RationalFunction &o);
	RationalFunction &operator-=(const RationalFunction &o);
	RationalFunction &operator*=(const RationalFunction &o);
	RationalFunction &operator/=(const RationalFunction &o);
	friend RationalFunction operator+(RationalFunction a, const RationalFunction &b) { return a += b; }
	friend RationalFunction operator-(RationalFunction a, const RationalFunction &b) { return a -= b; }
	friend RationalFunction operator*(RationalFunction a, const RationalFunction &b) { return a *= b; }
	friend RationalFunction operator/(RationalFunction a, const RationalFunction &b) { return a /= b; }
	RationalFunction operator-() const { return RationalFunction(-num_, den_); }

	// throws DivisionByZero if the denominator vanishes at u
	Rational eval(const Valuation &u) const;

	bool equals(const RationalFunction &o) const;
	bool operator==(const RationalFunction &o) const { return equals(o); }

	std::string str() const;

private:
	void normalize();
	Polynomial num_, den_;
};

} // namespace psyn
