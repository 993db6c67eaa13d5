#include "psyn/model.hpp"

#include <algorithm>
#include <sstream>

namespace psyn {

void Pmdp::add_state(const std::string &s)
{
	if (!has_state(s))
		states.push_back(s);
}

void Pmdp::add_param(const std::string &x)
{
	auto it = std::lower_bound(params.begin(), params.end(), x);
	if (it == params.end() || *it != x)
		params.insert(it, x);
}

void Pmdp::add_edge(const std::string &s, const std::string &a, const std::string &t, const Polynomial &p)
{
	add_state(s);
	add_state(t);
	for (const auto &x : p.variables())
		add_param(x);
	Row &r = trans[s][a];
	Polynomial &l = r[t];
	l += p;
	if (l.is_zero()) {
		r.erase(t);
		if (r.empty())
			trans[s].erase(a);
	}
}

void Pmdp::add_target(const std::string &set, const std::string &s)
{
	add_state(s);
	targets[set].insert(s);
}

bool Pmdp::has_state(const std::string &s) const
{
	return std::find(states.begin(), states.end(), s) != states.end();
}

size_t Pmdp::state_index(const std::string &s) const
{
	auto it = std::find(states.begin(), states.end(), s);
	if (it == states.end())
		throw ModelError("unknown state '" + s + "'");
	return static_cast<size_t>(it - states.begin());
}

std::vector<std::string> Pmdp::actions(const std::string &s) const
{
	std::vector<std::string> as;
	auto it = trans.find(s);
	if (it == trans.end())
		return as;
	for (const auto &[a, row] : it->second)
		if (!row.empty())
			as.push_back(a);
	return as;
}

const Pmdp::Row &Pmdp::row(const std::string &s, const std::string &a) const
{
	auto it = trans.find(s);
	if (it != trans.end()) {
		auto jt = it->second.find(a);
		if (jt != it->second.end())
			return jt->second;
	}
	throw ModelError("action '" + a + "' not enabled in state '" + s + "'");
}

Polynomial Pmdp::label(const std::string &s, const std::string &a, const std::string &t) const
{
	auto it = trans.find(s);
	if (it == trans.end())
		return Polynomial();
	auto jt = it->second.find(a);
	if (jt == it->second.end())
		return Polynomial();
	auto kt = jt->second.find(t);
	return kt == jt->second.end() ? Polynomial() : kt->second;
}

bool Pmdp::is_pmc() const
{
	for (const auto &s : states)
		if (actions(s).size() != 1)
			return false;
	return true;
}

bool Pmdp::is_parameter_free() const
{
	for (const auto &[s, ch] : trans)
		for (const auto &[a, row] : ch)
			for (const auto &[t, p] : row)
				if (!p.is_constant())
					return false;
	return true;
}

const std::set<std::string> &Pmdp::target(const std::string &name) const
{
	auto it = targets.find(name);
	if (it == targets.end())
		throw ModelError("no target set named '" + name + "'");
	return it->second;
}

size_t Pmdp::num_schedulers_capped(size_t cap) const
{
	size_t n = 1;
	for (const auto &s : states) {
		n *= std::max<size_t>(1, actions(s).size());
		if (n > cap)
			return cap + 1;
	}
	return n;
}

void Pmdp::validate() const
{
	std::set<std::string> ss(states.begin(), states.end());
	if (ss.size() != states.size())
		throw ModelError("duplicate state names");
	if (!ss.count(initial))
		throw ModelError("initial state '" + initial + "' is not a declared state");
	std::set<std::string> ps(params.begin(), params.end());
	for (const auto &[s, ch] : trans) {
		if (!ss.count(s))
			throw ModelError("transition from undeclared state '" + s + "'");
		for (const auto &[a, row] : ch)
			for (const auto &[t, p] : row) {
				if (!ss.count(t))
					throw ModelError("transition " + s + " -" + a + "-> " + t + " targets an undeclared state");
				for (const auto &x : p.variables())
					if (!ps.count(x))
						throw ModelError("label of " + s + " -" + a + "-> " + t + " uses undeclared parameter '" + x + "'");
			}
	}
	for (const auto &s : states)
		if (actions(s).empty())
			throw ModelError("state '" + s + "' has no enabled action");
	for (const auto &[name, set] : targets)
		for (const auto &s : set)
			if (!ss.count(s))
				throw ModelError("target set '" + name + "' references undeclared state '" + s + "'");
}

const char *to_string(InstKind k)
{
	switch (k) {
	case InstKind::Invalid: return "invalid";
	case InstKind::WellDefined: return "well-defined";
	case InstKind::GraphPreserving: return "graph-preserving";
	}
	return "?";
}

Classification classify_instantiation(const Pmdp &m, const Instantiation &u)
{
	for (const auto &x : m.params)
		if (!u.count(x))
			throw MissingParameter(x);
	Classification c;
	c.kind = InstKind::GraphPreserving;
	for (const auto &s : m.states)
		for (const auto &a : m.actions(s)) {
			Rational sum = 0;
			for (const auto &[t, p] : m.row(s, a)) {
				Rational v = p.eval(u);
				if (v < 0 || v > 1) {
					c.kind = InstKind::Invalid;
					c.reason = "P(" + s + "," + a + "," + t + ") = " + to_string(v) + " is not a probability";
					c.zero_edges.clear();
					return c;
				}
				if (v == 0)
					c.zero_edges.push_back({s, a, t});
				sum += v;
			}
			if (sum != 1) {
				c.kind = InstKind::Invalid;
				c.reason = "row (" + s + "," + a + ") sums to " + to_string(sum);
				c.zero_edges.clear();
				return c;
			}
		}
	if (!c.zero_edges.empty())
		c.kind = InstKind::WellDefined;
	return c;
}

SimpleReport check_simple(const Pmdp &m)
{
	SimpleReport r;
	for (const auto &s : m.states)
		for (const auto &a : m.actions(s)) {
			Polynomial sum;
			for (const auto &[t, p] : m.row(s, a)) {
				sum += p;
				if (p.is_constant())
					continue;
				auto vs = p.variables();
				const std::string &x = *vs.begin();
				if (vs.size() != 1 || (p != Polynomial::var(x) && p != Polynomial::one_minus(x)))
					r.violations.push_back("label " + p.str() + " on " + s + " -" + a + "-> " + t +
					                       " is neither x nor 1-x");
			}
			if (sum != Polynomial(1))
				r.violations.push_back("row (" + s + "," + a + ") sums to " + sum.str());
		}
	r.simple = r.violations.empty();
	return r;
}

Pmdp instantiate(const Pmdp &m, const Instantiation &u)
{
	Classification c = classify_instantiation(m, u);
	if (!c.well_defined())
		throw ModelError("instantiation is not well-defined: " + c.reason);
	Pmdp r;
	r.states = m.states;
	r.initial = m.initial;
	r.targets = m.targets;
	for (const auto &[s, ch] : m.trans)
		for (const auto &[a, row] : ch)
			for (const auto &[t, p] : row) {
				Rational v = p.eval(u);
				if (v != 0)
					r.trans[s][a][t] = Polynomial(v);
			}
	return r;
}

std::string Scheduler::str() const
{
	std::ostringstream os;
	os << '{';
	bool first = true;
	for (const auto &[s, a] : choice) {
		os << (first ? "" : ", ") << s << ':' << a;
		first = false;
	}
	os << '}';
	return os.str();
}

Scheduler default_scheduler(const Pmdp &m)
{
	Scheduler sc;
	for (const auto &s : m.states) {
		auto as = m.actions(s);
		if (!as.empty())
			sc.choice[s] = as.front();
	}
	return sc;
}

void validate_scheduler(const Pmdp &m, const Scheduler &sigma)
{
	for (const auto &s : m.states) {
		auto it = sigma.choice.find(s);
		auto as = m.actions(s);
		if (it == sigma.choice.end()) {
			if (as.size() == 1)
				continue;
			throw ModelError("scheduler has no choice for state '" + s + "'");
		}
		if (std::find(as.begin(), as.end(), it->second) == as.end())
			throw ModelError("scheduler picks '" + it->second + "' which is not enabled in '" + s + "'");
	}
}

Pmdp induced_pmc(const Pmdp &m, const Scheduler &sigma)
{
	validate_scheduler(m, sigma);
	Pmdp r;
	r.states = m.states;
	r.params = m.params;
	r.initial = m.initial;
	r.targets = m.targets;
	for (const auto &s : m.states) {
		auto it = sigma.choice.find(s);
		std::string a = it != sigma.choice.end() ? it->second : m.actions(s).front();
		r.trans[s][kDefaultAction] = m.row(s, a);
	}
	return r;
}

bool Interval::contains(const Rational &v) const
{
	if (lo_open ? v <= lo : v < lo)
		return false;
	if (hi_open ? v >= hi : v > hi)
		return false;
	return true;
}

ParamSpace ParamSpace::eps_box(const Rational &e)
{
	if (e <= 0 || e >= Rational(1, 2))
		throw ModelError("epsilon must lie in (0, 1/2)");
	return {EpsBox, e, {}};
}

bool ParamSpace::contains(const Pmdp &m, const Instantiation &u) const
{
	Classification c = classify_instantiation(m, u);
	switch (kind) {
	case WD: return c.well_defined();
	case GP: return c.graph_preserving();
	case EpsBox:
		for (const auto &x : m.params)
			if (u.at(x) < eps || u.at(x) > 1 - eps)
				return false;
		return c.well_defined();
	case Box:
		for (const auto &x : m.params) {
			auto it = box.find(x);
			if (it != box.end() && !it->second.contains(u.at(x)))
				return false;
		}
		return c.well_defined();
	}
	return false;
}

std::string ParamSpace::str() const
{
	switch (kind) {
	case WD: return "wd";
	case GP: return "gp";
	case EpsBox: return "eps-box(" + to_string(eps) + ")";
	case Box: return "box";
	}
	return "?";
}

void Csrg::validate() const
{
	std::set<std::string> ss(states.begin(), states.end());
	if (!ss.count(initial))
		throw ModelError("initial state '" + initial + "' is not declared");
	for (const auto &t : targets)
		if (!ss.count(t))
			throw ModelError("target '" + t + "' is not declared");
	for (const auto &s : states) {
		auto i1 = acts1.find(s), i2 = acts2.find(s);
		if (i1 == acts1.end() || i1->second.empty() || i2 == acts2.end() || i2->second.empty())
			throw ModelError("state '" + s + "' needs nonempty action sets for both players");
		for (const auto &a : i1->second)
			for (const auto &b : i2->second) {
				auto it = kernel.find({s, a, b});
				if (it == kernel.end())
					throw ModelError("missing kernel row (" + s + "," + a + "," + b + ")");
				Rational sum = 0;
				for (const auto &[t, p] : it->second) {
					if (!ss.count(t))
						throw ModelError("kernel row (" + s + "," + a + "," + b + ") targets undeclared '" + t + "'");
					if (p < 0)
						throw ModelError("negative kernel entry");
					sum += p;
				}
				if (sum != 1)
					throw ModelError("kernel row (" + s + "," + a + "," + b + ") sums to " + to_string(sum));
			}
	}
}

Rational RandStrategy::prob(const std::string &s, const std::string &a) const
{
	auto it = dist.find(s);
	if (it == dist.end())
		return 0;
	auto jt = it->second.find(a);
	return jt == it->second.end() ? Rational(0) : jt->second;
}

} // namespace psyn
