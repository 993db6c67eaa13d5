#pragma once

#include "psyn/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace psyn {

// Parameter -> value. Also used as the instantiation type of models.
using Valuation = std::map<std::string, Rational>;

struct MissingParameter : std::runtime_error {
	std::string name;
	explicit MissingParameter(const std::string &n)
		: std::runtime_error("no value for parameter '" + n + "'"), name(n) {}
};

class Monomial {
public:
	using Factor = std::pair<std::string, unsigned>;

	Monomial() = default;
	static Monomial var(const std::string &name, unsigned exp = 1);

	const std::vector<Factor> &factors() const { return f_; }
	unsigned degree() const { return deg_; }
	unsigned exponent(const std::string &name) const;
	bool is_one() const { return f_.empty(); }

	Monomial operator*(const Monomial &o) const;
	bool divides(const Monomial &o) const;
	// requires divides(o)
	Monomial quotient(const Monomial &o) const;
	// componentwise minimum of exponents
	Monomial gcd(const Monomial &o) const;

	std::string str() const;

	bool operator==(const Monomial &o) const { return f_ == o.f_; }

private:
	std::vector<Factor> f_; // sorted by name, exponents > 0
	unsigned deg_ = 0;
};

// Graded lexicographic order over sorted parameter names.
struct GrlexLess {
	bool operator()(const Monomial &a, const Monomial &b) const;
};

class Polynomial {
public:
	using Terms = std::map<Monomial, Rational, GrlexLess>;

	Polynomial() = default;
	Polynomial(const Rational &c);
	Polynomial(long c) : Polynomial(Rational(c)) {}
	Polynomial(int c) : Polynomial(Rational(c)) {}
	static Polynomial var(const std::string &name);
	static Polynomial one_minus(const std::string &name);
	static Polynomial term(const Rational &c, const Monomial &m);

	const Terms &terms() const { return t_; }
	size_t size() const { return t_.size(); }
	bool is_zero() const { return t_.empty(); }
	bool is_constant() const;
	Rational constant_term() const;
	Rational coeff(const Monomial &m) const;
	unsigned degree() const;
	unsigned degree_in(const std::string &name) const;
	std::set<std::string> variables() const;
	// leading term in grlex order; zero polynomial has none
	const std::pair<const Monomial, Rational> &leading() const;

	Polynomial &operator+=(const Polynomial &o);
	Polynomial &operator-=(const Polynomial &o);
	Polynomial &operator*=(const Polynomial &o);
	Polynomial &operator*=(const Rational &c);
	friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
	friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
	friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
	Polynomial operator-() const;
	Polynomial pow(unsigned e) const;
	Polynomial scaled(const Rational &c) const;
	// exact division by a monomial that divides every term
	Polynomial divided_by(const Monomial &m) const;
	Monomial monomial_content() const;

	Rational eval(const Valuation &u) const;
	Polynomial partial_eval(const Valuation &u) const;
	Polynomial substitute(const std::string &name, const Polynomial &by) const;
	Polynomial rename(const std::map<std::string, std::string> &names) const;

	// coefficients c_0..c_d of a polynomial in at most one variable
	std::vector<Rational> univariate_coeffs(const std::string &name) const;

	std::string str() const;

	bool operator==(const Polynomial &o) const { return t_ == o.t_; }

private:
	void add_term(const Monomial &m, const Rational &c);
	Terms t_;
};

Polynomial operator*(const Polynomial &a, const Polynomial &b);

} // namespace psyn
