#include "psyn/etr.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace psyn {

namespace {

std::string sym(const std::string &name)
{
	bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
	for (char c : name)
		if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
			simple = false;
	return simple ? name : "|" + name + "|";
}

std::string num(const Rational &q)
{
	auto nat = [](const mpz_class &z) { return z.get_str(); };
	mpz_class n = abs(q.get_num());
	std::string body = q.get_den() == 1 ? nat(n) : "(/ " + nat(n) + " " + nat(q.get_den()) + ")";
	return q < 0 ? "(- " + body + ")" : body;
}

std::string poly(const Polynomial &p)
{
	if (p.is_zero())
		return "0";
	std::vector<std::string> terms;
	for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
		const auto &[m, c] = *it;
		std::vector<std::string> fs;
		if (c != 1 || m.is_one())
			fs.push_back(num(c));
		for (const auto &[x, e] : m.factors())
			for (unsigned k = 0; k < e; k++)
				fs.push_back(sym(x));
		terms.push_back(fs.size() == 1 ? fs[0] : [&] {
			std::string s = "(*";
			for (const auto &f : fs)
				s += " " + f;
			return s + ")";
		}());
	}
	if (terms.size() == 1)
		return terms[0];
	std::string s = "(+";
	for (const auto &t : terms)
		s += " " + t;
	return s + ")";
}

void expr(std::ostream &os, const Expr &e)
{
	switch (e->kind) {
	case Node::True: os << "true"; return;
	case Node::False: os << "false"; return;
	case Node::BoolVar: os << sym(e->var); return;
	case Node::Atom: os << '(' << to_string(e->rel) << ' ' << poly(e->lhs) << ' ' << poly(e->rhs) << ')'; return;
	case Node::Not: os << "(not "; expr(os, e->kids[0]); os << ')'; return;
	case Node::And: os << "(and"; break;
	case Node::Or: os << "(or"; break;
	case Node::Implies: os << "(=>"; break;
	case Node::Iff: os << "(="; break;
	}
	for (const auto &k : e->kids) {
		os << ' ';
		expr(os, k);
	}
	os << ')';
}

// s-expressions
struct Sx {
	std::string atom;
	std::vector<Sx> list;
	bool is_list = false;
	size_t pos = 0;
};

class Reader {
public:
	explicit Reader(const std::string &t) : t_(t) {}

	bool at_end()
	{
		skip();
		return i_ >= t_.size();
	}

	Sx read()
	{
		skip();
		if (i_ >= t_.size())
			throw ParseError(i_, "unexpected end of input");
		Sx s;
		s.pos = i_;
		if (t_[i_] == '(') {
			s.is_list = true;
			i_++;
			for (;;) {
				skip();
				if (i_ >= t_.size())
					throw ParseError(i_, "unbalanced parenthesis");
				if (t_[i_] == ')') {
					i_++;
					break;
				}
				s.list.push_back(read());
			}
			return s;
		}
		if (t_[i_] == ')')
			throw ParseError(i_, "unexpected ')'");
		if (t_[i_] == '|') {
			size_t j = t_.find('|', i_ + 1);
			if (j == std::string::npos)
				throw ParseError(i_, "unterminated quoted symbol");
			s.atom = t_.substr(i_ + 1, j - i_ - 1);
			i_ = j + 1;
			return s;
		}
		size_t j = i_;
		while (j < t_.size() && !std::isspace(static_cast<unsigned char>(t_[j])) && t_[j] != '(' && t_[j] != ')')
			j++;
		s.atom = t_.substr(i_, j - i_);
		i_ = j;
		return s;
	}

private:
	void skip()
	{
		while (i_ < t_.size()) {
			if (std::isspace(static_cast<unsigned char>(t_[i_])))
				i_++;
			else if (t_[i_] == ';')
				while (i_ < t_.size() && t_[i_] != '\n')
					i_++;
			else
				break;
		}
	}
	const std::string &t_;
	size_t i_ = 0;
};

bool numeric(const std::string &s)
{
	return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.');
}

Polynomial to_poly(const Sx &s, const std::set<std::string> &reals)
{
	if (!s.is_list) {
		if (numeric(s.atom))
			return Polynomial(parse_rational(s.atom));
		if (!reals.count(s.atom))
			throw ParseError(s.pos, "undeclared real '" + s.atom + "'");
		return Polynomial::var(s.atom);
	}
	if (s.list.empty() || s.list[0].is_list)
		throw ParseError(s.pos, "malformed term");
	const std::string &op = s.list[0].atom;
	std::vector<Polynomial> args;
	for (size_t i = 1; i < s.list.size(); i++)
		args.push_back(to_poly(s.list[i], reals));
	if (args.empty())
		throw ParseError(s.pos, "operator without arguments");
	if (op == "+") {
		Polynomial r;
		for (const auto &a : args)
			r += a;
		return r;
	}
	if (op == "*") {
		Polynomial r(1);
		for (const auto &a : args)
			r *= a;
		return r;
	}
	if (op == "-") {
		if (args.size() == 1)
			return -args[0];
		Polynomial r = args[0];
		for (size_t i = 1; i < args.size(); i++)
			r -= args[i];
		return r;
	}
	if (op == "/") {
		Polynomial r = args[0];
		for (size_t i = 1; i < args.size(); i++) {
			if (!args[i].is_constant() || args[i].constant_term() == 0)
				throw ParseError(s.pos, "division by a non-constant or zero");
			r *= Rational(1) / args[i].constant_term();
		}
		return r;
	}
	throw ParseError(s.pos, "unsupported arithmetic operator '" + op + "'");
}

Expr to_expr(const Sx &s, const EtrFormula &decl)
{
	if (!s.is_list) {
		if (s.atom == "true")
			return t_true();
		if (s.atom == "false")
			return t_false();
		if (!decl.bools.count(s.atom))
			throw ParseError(s.pos, "undeclared boolean '" + s.atom + "'");
		return bvar(s.atom);
	}
	if (s.list.empty() || s.list[0].is_list)
		throw ParseError(s.pos, "malformed formula");
	const std::string &op = s.list[0].atom;
	auto kids = [&] {
		std::vector<Expr> ks;
		for (size_t i = 1; i < s.list.size(); i++)
			ks.push_back(to_expr(s.list[i], decl));
		return ks;
	};
	if (op == "and" || op == "or") {
		auto ks = kids();
		if (ks.size() < 2)
			throw ParseError(s.pos, op + " needs two arguments");
		return std::make_shared<const Node>(Node{op == "and" ? Node::And : Node::Or, {}, {}, {}, Rel::Eq, ks});
	}
	if (op == "not") {
		auto ks = kids();
		if (ks.size() != 1)
			throw ParseError(s.pos, "not takes one argument");
		return lnot(ks[0]);
	}
	if (op == "=>") {
		auto ks = kids();
		if (ks.size() != 2)
			throw ParseError(s.pos, "=> takes two arguments");
		return implies(ks[0], ks[1]);
	}
	if (s.list.size() != 3)
		throw ParseError(s.pos, "relation '" + op + "' takes two arguments");
	if (op == "=") {
		// boolean equality when an operand is not arithmetic
		auto is_bool = [&](const Sx &x) {
			return x.is_list ? (!x.list.empty() && !x.list[0].is_list &&
			                    (x.list[0].atom == "and" || x.list[0].atom == "or" || x.list[0].atom == "not" ||
			                     x.list[0].atom == "=>" || x.list[0].atom == "<" || x.list[0].atom == "<=" ||
			                     x.list[0].atom == ">" || x.list[0].atom == ">=" || x.list[0].atom == "="))
			                 : (x.atom == "true" || x.atom == "false" || decl.bools.count(x.atom));
		};
		if (is_bool(s.list[1]))
			return iff(to_expr(s.list[1], decl), to_expr(s.list[2], decl));
	}
	Rel r;
	try {
		r = parse_rel(op);
	} catch (const std::invalid_argument &) {
		throw ParseError(s.pos, "unknown operator '" + op + "'");
	}
	return atom(to_poly(s.list[1], decl.reals), r, to_poly(s.list[2], decl.reals));
}

} // namespace

std::string emit_smtlib(const EtrFormula &f)
{
	std::ostringstream os;
	if (!f.comment.empty()) {
		std::istringstream lines(f.comment);
		for (std::string l; std::getline(lines, l);)
			os << "; " << l << '\n';
	}
	os << "(set-logic QF_NRA)\n";
	for (const auto &b : f.bools)
		os << "(declare-fun " << sym(b) << " () Bool)\n";
	for (const auto &r : f.reals)
		os << "(declare-fun " << sym(r) << " () Real)\n";
	if (f.body->kind == Node::And) {
		for (const auto &k : f.body->kids) {
			os << "(assert ";
			expr(os, k);
			os << ")\n";
		}
	} else {
		os << "(assert ";
		expr(os, f.body);
		os << ")\n";
	}
	os << "(check-sat)\n(get-model)\n";
	return os.str();
}

EtrFormula parse_smtlib(const std::string &text)
{
	EtrFormula f;
	// leading comment lines become the formula comment again
	std::istringstream lines(text);
	for (std::string l; std::getline(lines, l) && !l.empty() && l[0] == ';';) {
		size_t from = l.size() > 1 && l[1] == ' ' ? 2 : 1;
		f.comment += (f.comment.empty() ? "" : "\n") + l.substr(from);
	}
	Reader rd(text);
	std::vector<Expr> asserts;
	while (!rd.at_end()) {
		Sx s = rd.read();
		if (!s.is_list || s.list.empty() || s.list[0].is_list)
			throw ParseError(s.pos, "expected a command");
		const std::string &cmd = s.list[0].atom;
		if (cmd == "set-logic" || cmd == "check-sat" || cmd == "get-model" || cmd == "set-option" || cmd == "exit")
			continue;
		if (cmd == "declare-fun" || cmd == "declare-const") {
			const Sx &sort = s.list.back();
			if (s.list.size() < 3 || sort.is_list)
				throw ParseError(s.pos, "malformed declaration");
			if (sort.atom == "Real")
				f.declare_real(s.list[1].atom);
			else if (sort.atom == "Bool")
				f.declare_bool(s.list[1].atom);
			else
				throw ParseError(sort.pos, "unsupported sort '" + sort.atom + "'");
			continue;
		}
		if (cmd == "assert") {
			if (s.list.size() != 2)
				throw ParseError(s.pos, "assert takes one formula");
			asserts.push_back(to_expr(s.list[1], f));
			continue;
		}
		throw ParseError(s.pos, "unsupported command '" + cmd + "'");
	}
	if (asserts.size() == 1)
		f.body = asserts[0];
	else if (asserts.empty())
		f.body = t_true();
	else
		f.body = std::make_shared<const Node>(Node{Node::And, {}, {}, {}, Rel::Eq, asserts});
	return f;
}

// used by the solver driver
Assignment parse_smt_model(const std::string &text, std::vector<std::string> &irrational)
{
	Assignment a;
	Reader rd(text);
	std::function<void(const Sx &)> walk = [&](const Sx &s) {
		if (!s.is_list)
			return;
		if (s.list.size() == 5 && !s.list[0].is_list && s.list[0].atom == "define-fun") {
			const std::string &name = s.list[1].atom;
			const std::string &sort = s.list[3].atom;
			const Sx &v = s.list[4];
			if (sort == "Bool" && !v.is_list) {
				a.bools[name] = v.atom == "true";
				return;
			}
			if (sort == "Real" || sort == "Int") {
				try {
					Polynomial p = to_poly(v, {});
					if (p.is_constant()) {
						a.reals[name] = p.constant_term();
						return;
					}
				} catch (const std::exception &) {
				}
				irrational.push_back(name);
			}
			return;
		}
		for (const auto &k : s.list)
			walk(k);
	};
	while (!rd.at_end())
		walk(rd.read());
	return a;
}

} // namespace psyn
