#include "psyn/ratfunc.hpp"

namespace psyn {

RationalFunction::RationalFunction(const Polynomial &num, const Polynomial &den)
	: num_(num), den_(den)
{
	if (den_.is_zero())
		throw DivisionByZero("rational function with zero denominator");
	normalize();
}

void RationalFunction::normalize()
{
	if (num_.is_zero()) {
		den_ = Polynomial(1);
		return;
	}
	if (num_ == den_) {
		num_ = den_ = Polynomial(1);
		return;
	}
	Monomial g = num_.monomial_content().gcd(den_.monomial_content());
	if (!g.is_one()) {
		num_ = num_.divided_by(g);
		den_ = den_.divided_by(g);
	}
	Rational lc = den_.leading().second;
	if (lc != 1) {
		Rational inv = Rational(1) / lc;
		num_ *= inv;
		den_ *= inv;
	}
	if (num_ == den_)
		num_ = den_ = Polynomial(1);
}

RationalFunction &RationalFunction::operator+=(const RationalFunction &o)
{
	if (den_ == o.den_)
		num_ += o.num_;
	else {
		num_ = num_ * o.den_ + o.num_ * den_;
		den_ = den_ * o.den_;
	}
	normalize();
	return *this;
}

RationalFunction &RationalFunction::operator-=(const RationalFunction &o)
{
	return *this += -o;
}

RationalFunction &RationalFunction::operator*=(const RationalFunction &o)
{
	if (num_.is_zero() || o.num_.is_zero()) {
		num_ = Polynomial(0);
		den_ = Polynomial(1);
		return *this;
	}
	// cheap cross cancellation when factors coincide
	if (num_ == o.den_) {
		num_ = o.num_;
	} else if (den_ == o.num_) {
		den_ = o.den_;
	} else {
		num_ *= o.num_;
		den_ *= o.den_;
	}
	normalize();
	return *this;
}

RationalFunction &RationalFunction::operator/=(const RationalFunction &o)
{
	if (o.num_.is_zero())
		throw DivisionByZero("division by the zero function");
	return *this *= RationalFunction(o.den_, o.num_);
}

Rational RationalFunction::eval(const Valuation &u) const
{
	Rational d = den_.eval(u);
	if (d == 0)
		throw DivisionByZero("denominator " + den_.str() + " vanishes");
	return num_.eval(u) / d;
}

bool RationalFunction::equals(const RationalFunction &o) const
{
	return num_ * o.den_ == o.num_ * den_;
}

std::string RationalFunction::str() const
{
	if (den_ == Polynomial(1))
		return num_.str();
	return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace psyn
