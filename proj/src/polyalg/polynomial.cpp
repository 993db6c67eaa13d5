#include "psyn/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace psyn {

Monomial Monomial::var(const std::string &name, unsigned exp)
{
	Monomial m;
	if (exp > 0) {
		m.f_.emplace_back(name, exp);
		m.deg_ = exp;
	}
	return m;
}

unsigned Monomial::exponent(const std::string &name) const
{
	for (const auto &[n, e] : f_)
		if (n == name)
			return e;
	return 0;
}

Monomial Monomial::operator*(const Monomial &o) const
{
	Monomial r;
	r.f_.reserve(f_.size() + o.f_.size());
	size_t i = 0, j = 0;
	while (i < f_.size() || j < o.f_.size()) {
		if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first))
			r.f_.push_back(f_[i++]);
		else if (i == f_.size() || o.f_[j].first < f_[i].first)
			r.f_.push_back(o.f_[j++]);
		else {
			r.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
			i++, j++;
		}
	}
	r.deg_ = deg_ + o.deg_;
	return r;
}

bool Monomial::divides(const Monomial &o) const
{
	for (const auto &[n, e] : f_)
		if (o.exponent(n) < e)
			return false;
	return true;
}

Monomial Monomial::quotient(const Monomial &o) const
{
	Monomial r;
	for (const auto &[n, e] : f_) {
		unsigned d = e - o.exponent(n);
		if (d > 0) {
			r.f_.emplace_back(n, d);
			r.deg_ += d;
		}
	}
	return r;
}

Monomial Monomial::gcd(const Monomial &o) const
{
	Monomial r;
	for (const auto &[n, e] : f_) {
		unsigned d = std::min(e, o.exponent(n));
		if (d > 0) {
			r.f_.emplace_back(n, d);
			r.deg_ += d;
		}
	}
	return r;
}

std::string Monomial::str() const
{
	std::string s;
	for (const auto &[n, e] : f_) {
		if (!s.empty())
			s += '*';
		s += n;
		if (e > 1)
			s += '^' + std::to_string(e);
	}
	return s.empty() ? "1" : s;
}

bool GrlexLess::operator()(const Monomial &a, const Monomial &b) const
{
	if (a.degree() != b.degree())
		return a.degree() < b.degree();
	const auto &fa = a.factors(), &fb = b.factors();
	size_t i = 0;
	for (; i < fa.size() && i < fb.size(); i++) {
		if (fa[i].first != fb[i].first)
			// the one carrying the earlier variable is larger
			return fb[i].first < fa[i].first;
		if (fa[i].second != fb[i].second)
			return fa[i].second < fb[i].second;
	}
	return false;
}

Polynomial::Polynomial(const Rational &c)
{
	if (c != 0)
		t_.emplace(Monomial(), c);
}

Polynomial Polynomial::var(const std::string &name)
{
	return term(1, Monomial::var(name));
}

Polynomial Polynomial::one_minus(const std::string &name)
{
	return Polynomial(1) - var(name);
}

Polynomial Polynomial::term(const Rational &c, const Monomial &m)
{
	Polynomial p;
	if (c != 0)
		p.t_.emplace(m, c);
	return p;
}

bool Polynomial::is_constant() const
{
	return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const
{
	return coeff(Monomial());
}

Rational Polynomial::coeff(const Monomial &m) const
{
	auto it = t_.find(m);
	return it == t_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const
{
	return t_.empty() ? 0 : t_.rbegin()->first.degree();
}

unsigned Polynomial::degree_in(const std::string &name) const
{
	unsigned d = 0;
	for (const auto &[m, c] : t_)
		d = std::max(d, m.exponent(name));
	return d;
}

std::set<std::string> Polynomial::variables() const
{
	std::set<std::string> vs;
	for (const auto &[m, c] : t_)
		for (const auto &[n, e] : m.factors())
			vs.insert(n);
	return vs;
}

const std::pair<const Monomial, Rational> &Polynomial::leading() const
{
	if (t_.empty())
		throw std::logic_error("leading term of the zero polynomial");
	return *t_.rbegin();
}

void Polynomial::add_term(const Monomial &m, const Rational &c)
{
	if (c == 0)
		return;
	auto [it, fresh] = t_.try_emplace(m, c);
	if (!fresh) {
		it->second += c;
		if (it->second == 0)
			t_.erase(it);
	}
}

Polynomial &Polynomial::operator+=(const Polynomial &o)
{
	for (const auto &[m, c] : o.t_)
		add_term(m, c);
	return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
	for (const auto &[m, c] : o.t_)
		add_term(m, -c);
	return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
	Polynomial r;
	for (const auto &[ma, ca] : a.t_)
		for (const auto &[mb, cb] : b.t_)
			r.add_term(ma * mb, ca * cb);
	return r;
}

Polynomial &Polynomial::operator*=(const Polynomial &o)
{
	return *this = *this * o;
}

Polynomial &Polynomial::operator*=(const Rational &c)
{
	if (c == 0)
		t_.clear();
	else
		for (auto &[m, v] : t_)
			v *= c;
	return *this;
}

Polynomial Polynomial::operator-() const
{
	return scaled(-1);
}

Polynomial Polynomial::pow(unsigned e) const
{
	Polynomial r(1), b = *this;
	while (e) {
		if (e & 1)
			r *= b;
		e >>= 1;
		if (e)
			b = b * b;
	}
	return r;
}

Polynomial Polynomial::scaled(const Rational &c) const
{
	Polynomial r = *this;
	r *= c;
	return r;
}

Polynomial Polynomial::divided_by(const Monomial &d) const
{
	Polynomial r;
	for (const auto &[m, c] : t_) {
		if (!d.divides(m))
			throw std::logic_error("monomial " + d.str() + " does not divide " + m.str());
		r.t_.emplace(m.quotient(d), c);
	}
	return r;
}

Monomial Polynomial::monomial_content() const
{
	if (t_.empty())
		return Monomial();
	Monomial g = t_.begin()->first;
	for (const auto &[m, c] : t_)
		g = g.gcd(m);
	return g;
}

Rational Polynomial::eval(const Valuation &u) const
{
	Rational sum = 0, t;
	for (const auto &[m, c] : t_) {
		t = c;
		for (const auto &[n, e] : m.factors()) {
			auto it = u.find(n);
			if (it == u.end())
				throw MissingParameter(n);
			for (unsigned i = 0; i < e; i++)
				t *= it->second;
		}
		sum += t;
	}
	return sum;
}

Polynomial Polynomial::partial_eval(const Valuation &u) const
{
	Polynomial r;
	for (const auto &[m, c] : t_) {
		Rational k = c;
		Monomial rest;
		for (const auto &[n, e] : m.factors()) {
			auto it = u.find(n);
			if (it == u.end()) {
				rest = rest * Monomial::var(n, e);
				continue;
			}
			for (unsigned i = 0; i < e; i++)
				k *= it->second;
		}
		r.add_term(rest, k);
	}
	return r;
}

Polynomial Polynomial::substitute(const std::string &name, const Polynomial &by) const
{
	Polynomial r;
	std::vector<Polynomial> powers{Polynomial(1)};
	for (const auto &[m, c] : t_) {
		unsigned e = m.exponent(name);
		while (powers.size() <= e)
			powers.push_back(powers.back() * by);
		Monomial rest;
		for (const auto &[n, k] : m.factors())
			if (n != name)
				rest = rest * Monomial::var(n, k);
		r += term(c, rest) * powers[e];
	}
	return r;
}

Polynomial Polynomial::rename(const std::map<std::string, std::string> &names) const
{
	Polynomial r;
	for (const auto &[m, c] : t_) {
		Monomial nm;
		for (const auto &[n, e] : m.factors()) {
			auto it = names.find(n);
			nm = nm * Monomial::var(it == names.end() ? n : it->second, e);
		}
		r.add_term(nm, c);
	}
	return r;
}

std::vector<Rational> Polynomial::univariate_coeffs(const std::string &name) const
{
	std::vector<Rational> cs(degree_in(name) + 1);
	for (const auto &[m, c] : t_) {
		if (m.factors().size() > 1 || (m.factors().size() == 1 && m.factors()[0].first != name))
			throw std::invalid_argument("polynomial " + str() + " is not univariate in " + name);
		cs[m.exponent(name)] = c;
	}
	return cs;
}

std::string Polynomial::str() const
{
	if (t_.empty())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
		const auto &[m, c] = *it;
		Rational a = abs(c);
		if (first)
			os << (c < 0 ? "-" : "");
		else
			os << (c < 0 ? " - " : " + ");
		first = false;
		if (m.is_one())
			os << to_string(a);
		else if (a == 1)
			os << m.str();
		else
			os << to_string(a) << '*' << m.str();
	}
	return os.str();
}

} // namespace psyn
