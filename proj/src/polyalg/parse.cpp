#include "psyn/parse.hpp"

#include <cctype>
#include <cstring>

namespace psyn {

namespace {

constexpr unsigned kMaxExponent = 4096;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '\''; }

struct Parser {
	std::string_view s;
	size_t i = 0;

	void skip()
	{
		while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
			i++;
	}

	char peek()
	{
		skip();
		return i < s.size() ? s[i] : '\0';
	}

	[[noreturn]] void fail(const std::string &what)
	{
		if (i < s.size()) {
			char c = s[i];
			if (!ident_char(c) && !std::strchr("+-*/^().", c) && !std::isspace(static_cast<unsigned char>(c)))
				throw ParseError(i, std::string("unknown character '") + c + "'");
		}
		throw ParseError(i, "syntax error: " + what);
	}

	Polynomial expr()
	{
		Polynomial p = term();
		for (char c; (c = peek()) == '+' || c == '-';) {
			i++;
			if (c == '+')
				p += term();
			else
				p -= term();
		}
		return p;
	}

	Polynomial term()
	{
		Polynomial p = unary();
		for (char c; (c = peek()) == '*' || c == '/';) {
			size_t at = i++;
			Polynomial q = unary();
			if (c == '*') {
				p *= q;
				continue;
			}
			if (!q.is_constant() || q.is_zero())
				throw ParseError(at, "syntax error: division by a non-constant or zero");
			p *= Rational(1) / q.constant_term();
		}
		return p;
	}

	Polynomial unary()
	{
		char c = peek();
		if (c == '-') {
			i++;
			return -unary();
		}
		if (c == '+') {
			i++;
			return unary();
		}
		return power();
	}

	Polynomial power()
	{
		Polynomial b = primary();
		if (peek() == '^') {
			i++;
			skip();
			size_t start = i;
			while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
				i++;
			if (start == i)
				fail("expected exponent");
			unsigned long e = std::stoul(std::string(s.substr(start, i - start)));
			if (e > kMaxExponent)
				throw ParseError(start, "exponent too large");
			b = b.pow(static_cast<unsigned>(e));
		}
		return b;
	}

	Polynomial primary()
	{
		char c = peek();
		if (c == '(') {
			i++;
			Polynomial p = expr();
			if (peek() != ')')
				fail("expected ')'");
			i++;
			return p;
		}
		if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
			size_t start = i;
			while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
				i++;
			if (i < s.size() && s[i] == '.') {
				i++;
				while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
					i++;
			}
			auto lit = s.substr(start, i - start);
			if (lit == ".")
				throw ParseError(start, "syntax error: lone '.'");
			return Polynomial(parse_rational(lit));
		}
		if (ident_start(c)) {
			size_t start = i;
			while (i < s.size() && ident_char(s[i]))
				i++;
			return Polynomial::var(std::string(s.substr(start, i - start)));
		}
		if (c == '\0')
			fail("unexpected end of input");
		fail("unexpected token");
	}
};

} // namespace

Polynomial parse_poly(std::string_view text)
{
	Parser p{text};
	if (p.peek() == '\0')
		throw ParseError(p.i, "syntax error: empty expression");
	Polynomial r = p.expr();
	if (p.peek() != '\0')
		p.fail("trailing input");
	return r;
}

bool is_identifier(std::string_view name)
{
	if (name.empty() || !ident_start(name[0]))
		return false;
	for (char c : name)
		if (!ident_char(c))
			return false;
	return true;
}

} // namespace psyn
