#include "psyn/etr.hpp"

#include <functional>

namespace psyn {

const char *to_string(Rel r)
{
	switch (r) {
	case Rel::Lt: return "<";
	case Rel::Le: return "<=";
	case Rel::Eq: return "=";
	case Rel::Ge: return ">=";
	case Rel::Gt: return ">";
	}
	return "?";
}

Rel parse_rel(std::string_view s)
{
	if (s == "<" || s == "lt")
		return Rel::Lt;
	if (s == "<=" || s == "le")
		return Rel::Le;
	if (s == "=" || s == "==" || s == "eq")
		return Rel::Eq;
	if (s == ">=" || s == "ge")
		return Rel::Ge;
	if (s == ">" || s == "gt")
		return Rel::Gt;
	throw std::invalid_argument("unknown relation '" + std::string(s) + "'");
}

bool holds(const Rational &a, Rel r, const Rational &b)
{
	switch (r) {
	case Rel::Lt: return a < b;
	case Rel::Le: return a <= b;
	case Rel::Eq: return a == b;
	case Rel::Ge: return a >= b;
	case Rel::Gt: return a > b;
	}
	return false;
}

Rel flip(Rel r)
{
	switch (r) {
	case Rel::Lt: return Rel::Gt;
	case Rel::Le: return Rel::Ge;
	case Rel::Ge: return Rel::Le;
	case Rel::Gt: return Rel::Lt;
	case Rel::Eq: return Rel::Eq;
	}
	return r;
}

Rel negate(Rel r)
{
	switch (r) {
	case Rel::Lt: return Rel::Ge;
	case Rel::Le: return Rel::Gt;
	case Rel::Ge: return Rel::Lt;
	case Rel::Gt: return Rel::Le;
	case Rel::Eq: break;
	}
	throw std::invalid_argument("= has no single-relation negation");
}

namespace {

Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Expr junction(Node::Kind k, std::vector<Expr> es)
{
	Node::Kind unit = k == Node::And ? Node::True : Node::False;
	Node::Kind zero = k == Node::And ? Node::False : Node::True;
	std::vector<Expr> flat;
	for (auto &e : es) {
		if (e->kind == unit)
			continue;
		if (e->kind == zero)
			return make({zero, {}, {}, {}, Rel::Eq, {}});
		if (e->kind == k)
			flat.insert(flat.end(), e->kids.begin(), e->kids.end());
		else
			flat.push_back(std::move(e));
	}
	if (flat.empty())
		return make({unit, {}, {}, {}, Rel::Eq, {}});
	if (flat.size() == 1)
		return flat.front();
	return make({k, {}, {}, {}, Rel::Eq, std::move(flat)});
}

} // namespace

Expr t_true() { return make({Node::True, {}, {}, {}, Rel::Eq, {}}); }
Expr t_false() { return make({Node::False, {}, {}, {}, Rel::Eq, {}}); }
Expr bvar(const std::string &name) { return make({Node::BoolVar, name, {}, {}, Rel::Eq, {}}); }
Expr atom(const Polynomial &lhs, Rel r, const Polynomial &rhs) { return make({Node::Atom, {}, lhs, rhs, r, {}}); }
Expr lnot(Expr e) { return make({Node::Not, {}, {}, {}, Rel::Eq, {std::move(e)}}); }
Expr and_of(std::vector<Expr> es) { return junction(Node::And, std::move(es)); }
Expr or_of(std::vector<Expr> es) { return junction(Node::Or, std::move(es)); }
Expr implies(Expr a, Expr b) { return make({Node::Implies, {}, {}, {}, Rel::Eq, {std::move(a), std::move(b)}}); }
Expr iff(Expr a, Expr b) { return make({Node::Iff, {}, {}, {}, Rel::Eq, {std::move(a), std::move(b)}}); }

bool structurally_equal(const Expr &a, const Expr &b)
{
	if (a->kind != b->kind || a->kids.size() != b->kids.size())
		return false;
	switch (a->kind) {
	case Node::BoolVar:
		return a->var == b->var;
	case Node::Atom:
		return a->rel == b->rel && a->lhs == b->lhs && a->rhs == b->rhs;
	default:
		break;
	}
	for (size_t i = 0; i < a->kids.size(); i++)
		if (!structurally_equal(a->kids[i], b->kids[i]))
			return false;
	return true;
}

void EtrFormula::check_declared() const
{
	std::function<void(const Expr &)> walk = [&](const Expr &e) {
		if (e->kind == Node::BoolVar && !bools.count(e->var))
			throw std::invalid_argument("undeclared boolean '" + e->var + "'");
		if (e->kind == Node::Atom)
			for (const Polynomial *p : {&e->lhs, &e->rhs})
				for (const auto &x : p->variables())
					if (!reals.count(x))
						throw std::invalid_argument("undeclared real '" + x + "'");
		for (const auto &k : e->kids)
			walk(k);
	};
	walk(body);
}

size_t EtrFormula::size() const
{
	std::function<size_t(const Expr &)> count = [&](const Expr &e) {
		size_t n = 1;
		for (const auto &k : e->kids)
			n += count(k);
		return n;
	};
	return count(body);
}

bool evaluate(const Expr &e, const Assignment &a)
{
	switch (e->kind) {
	case Node::True: return true;
	case Node::False: return false;
	case Node::BoolVar: {
		auto it = a.bools.find(e->var);
		if (it == a.bools.end())
			throw MissingVariable("no value for boolean '" + e->var + "'");
		return it->second;
	}
	case Node::Atom:
		try {
			return holds(e->lhs.eval(a.reals), e->rel, e->rhs.eval(a.reals));
		} catch (const MissingParameter &m) {
			throw MissingVariable("no value for real '" + m.name + "'");
		}
	case Node::Not: return !evaluate(e->kids[0], a);
	case Node::And:
		for (const auto &k : e->kids)
			if (!evaluate(k, a))
				return false;
		return true;
	case Node::Or:
		for (const auto &k : e->kids)
			if (evaluate(k, a))
				return true;
		return false;
	case Node::Implies: return !evaluate(e->kids[0], a) || evaluate(e->kids[1], a);
	case Node::Iff: return evaluate(e->kids[0], a) == evaluate(e->kids[1], a);
	}
	return false;
}

bool evaluate(const EtrFormula &f, const Assignment &a)
{
	return evaluate(f.body, a);
}

} // namespace psyn
