#include "psyn/rational.hpp"

#include <cctype>

namespace psyn {

static bool all_digits(std::string_view s)
{
	if (s.empty())
		return false;
	for (char c : s)
		if (!std::isdigit(static_cast<unsigned char>(c)))
			return false;
	return true;
}

Rational parse_rational(std::string_view text)
{
	std::string_view s = text;
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
		s.remove_prefix(1);
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
		s.remove_suffix(1);
	bool neg = false;
	if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
		neg = s[0] == '-';
		s.remove_prefix(1);
	}
	Rational q;
	if (auto slash = s.find('/'); slash != std::string_view::npos) {
		auto a = s.substr(0, slash), b = s.substr(slash + 1);
		if (!all_digits(a) || !all_digits(b))
			throw ParseError(0, "malformed rational '" + std::string(text) + "'");
		mpz_class den{std::string(b), 10};
		if (den == 0)
			throw ParseError(slash + 1, "zero denominator in '" + std::string(text) + "'");
		q = Rational(mpz_class{std::string(a), 10}, den);
	} else if (auto dot = s.find('.'); dot != std::string_view::npos) {
		auto a = s.substr(0, dot), b = s.substr(dot + 1);
		if ((a.empty() && b.empty()) || (!a.empty() && !all_digits(a)) || (!b.empty() && !all_digits(b)))
			throw ParseError(0, "malformed decimal '" + std::string(text) + "'");
		mpz_class num{std::string(a.empty() ? "0" : a) + std::string(b), 10};
		mpz_class den;
		mpz_ui_pow_ui(den.get_mpz_t(), 10, b.size());
		q = Rational(num, den);
	} else {
		if (!all_digits(s))
			throw ParseError(0, "malformed rational '" + std::string(text) + "'");
		q = Rational(mpz_class{std::string(s), 10});
	}
	q.canonicalize();
	if (neg)
		q = -q;
	return q;
}

std::string to_string(const Rational &q)
{
	if (q.get_den() == 1)
		return q.get_num().get_str();
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_normalized(const Rational &q)
{
	if (sgn(q.get_den()) <= 0)
		return false;
	mpz_class g;
	mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
	return g == 1;
}

Rational binomial(unsigned n, unsigned k)
{
	mpz_class r;
	mpz_bin_uiui(r.get_mpz_t(), n, k);
	return Rational(r);
}

} // namespace psyn
