#include "common.hpp"

namespace psyn {

void GadgetOutput::certify(const std::string &key, const std::string &value)
{
	certificate[key] = value;
	model.metadata["cert." + key] = value;
}

namespace detail {

std::string fresh_state(const Pmdp &m, const std::string &base)
{
	if (!m.has_state(base))
		return base;
	for (int i = 1;; i++) {
		std::string s = base + "_" + std::to_string(i);
		if (!m.has_state(s))
			return s;
	}
}

std::string fresh_param(const Pmdp &m, const std::string &base)
{
	auto taken = [&](const std::string &x) { return std::binary_search(m.params.begin(), m.params.end(), x); };
	if (!taken(base))
		return base;
	for (int i = 1;; i++) {
		std::string x = base + "_" + std::to_string(i);
		if (!taken(x))
			return x;
	}
}

void require_open_unit(const Rational &lambda, const char *who)
{
	if (lambda <= 0 || lambda >= 1)
		throw GadgetError(std::string(who) + ": threshold " + to_string(lambda) + " is not in (0,1)");
}

void finish(GadgetOutput &out, const std::string &by)
{
	out.model.metadata["generated_by"] = by;
	for (const auto &[k, v] : out.certificate)
		out.model.metadata["cert." + k] = v;
}

void self_loop(Pmdp &m, const std::string &s)
{
	m.add_edge(s, kDefaultAction, s, 1);
}

bool is_dirac(const Pmdp::Row &row)
{
	return row.size() == 1 && row.begin()->second == Polynomial(1);
}

Pmdp::Row embed(Pmdp &host, const Pmdp &g, const std::string &prefix,
                const std::map<std::string, std::string> &redirect)
{
	auto name = [&](const std::string &s) {
		auto it = redirect.find(s);
		return it != redirect.end() ? it->second : prefix + s;
	};
	for (const auto &x : g.params)
		host.add_param(x);
	for (const auto &s : g.states) {
		if (s == g.initial || redirect.count(s))
			continue;
		for (const auto &[a, row] : g.trans.at(s))
			for (const auto &[t, p] : row) {
				if (t == g.initial)
					throw std::logic_error("embed: initial state has an incoming edge");
				host.add_edge(name(s), a, name(t), p);
			}
	}
	Pmdp::Row out;
	for (const auto &[t, p] : g.row(g.initial, g.actions(g.initial).front()))
		out[name(t)] += p;
	return out;
}

} // namespace detail

using namespace detail;

static GadgetOutput copy_of(const Pmdp &m, const std::string &target)
{
	m.target(target); // throws on an unknown name
	GadgetOutput out;
	out.model = m;
	out.target = target;
	out.transport = [](const Instantiation &u) { return u; };
	out.transport_back = out.transport;
	out.scheduler_map = [](const Scheduler &s) { return s; };
	out.scheduler_back = out.scheduler_map;
	return out;
}

GadgetOutput threshold_gadget(const Pmdp &m, const std::string &target, const Rational &lambda)
{
	require_open_unit(lambda, "threshold_gadget");
	GadgetOutput out = copy_of(m, target);
	out.threshold = lambda;
	out.certificate["relation"] = "Pr' ~ lambda iff Pr ~ 1/2";
	out.certificate["lambda"] = to_string(lambda);
	const Rational half = frac(1, 2);
	if (lambda == half) {
		out.certificate["construction"] = "identity";
		out.value_map = [](const Rational &v) { return v; };
		finish(out, "threshold_gadget");
		return out;
	}
	Pmdp &r = out.model;
	std::string init = fresh_state(r, "$init");
	r.add_state(init);
	std::string old = r.initial;
	r.initial = init;
	Rational l = lambda;
	if (lambda < half) {
		std::string sink = fresh_state(r, "$sink");
		r.add_edge(init, kDefaultAction, old, Polynomial(2 * l));
		r.add_edge(init, kDefaultAction, sink, Polynomial(1 - 2 * l));
		self_loop(r, sink);
		out.value_map = [l](const Rational &v) { return Rational(2 * l * v); };
		out.certificate["construction"] = "prepend 2*lambda to the model, rest to a sink";
		out.certificate["value"] = "Pr' = " + to_string(Rational(2 * l)) + "*Pr";
	} else {
		std::string goal = fresh_state(r, "$goal");
		r.add_edge(init, kDefaultAction, old, Polynomial(2 * (1 - l)));
		r.add_edge(init, kDefaultAction, goal, Polynomial(2 * l - 1));
		self_loop(r, goal);
		r.add_target(target, goal);
		out.value_map = [l](const Rational &v) { return Rational(2 * l - 1 + 2 * (1 - l) * v); };
		out.certificate["construction"] = "prepend 2*(1-lambda) to the model, rest to a target";
		out.certificate["value"] = "Pr' = " + to_string(Rational(2 * l - 1)) + " + " +
		                           to_string(Rational(2 * (1 - l))) + "*Pr";
	}
	finish(out, "threshold_gadget");
	return out;
}

GadgetOutput normalize_threshold(const Pmdp &m, const std::string &target, const Rational &lambda)
{
	require_open_unit(lambda, "normalize_threshold");
	GadgetOutput out = copy_of(m, target);
	out.threshold = frac(1, 2);
	out.certificate["relation"] = "Pr' ~ 1/2 iff Pr ~ lambda";
	out.certificate["lambda"] = to_string(lambda);
	const Rational half = frac(1, 2);
	if (lambda == half) {
		out.certificate["construction"] = "identity";
		out.value_map = [](const Rational &v) { return v; };
		finish(out, "normalize_threshold");
		return out;
	}
	Pmdp &r = out.model;
	std::string init = fresh_state(r, "$init");
	r.add_state(init);
	std::string old = r.initial;
	r.initial = init;
	if (lambda > half) {
		Rational w = 1 / (2 * lambda);
		std::string sink = fresh_state(r, "$sink");
		r.add_edge(init, kDefaultAction, old, Polynomial(w));
		r.add_edge(init, kDefaultAction, sink, Polynomial(1 - w));
		self_loop(r, sink);
		out.value_map = [w](const Rational &v) { return Rational(w * v); };
		out.certificate["value"] = "Pr' = " + to_string(w) + "*Pr";
	} else {
		Rational c = (half - lambda) / (1 - lambda);
		std::string goal = fresh_state(r, "$goal");
		r.add_edge(init, kDefaultAction, goal, Polynomial(c));
		r.add_edge(init, kDefaultAction, old, Polynomial(1 - c));
		self_loop(r, goal);
		r.add_target(target, goal);
		out.value_map = [c](const Rational &v) { return Rational(c + (1 - c) * v); };
		out.certificate["value"] = "Pr' = " + to_string(c) + " + " + to_string(Rational(1 - c)) + "*Pr";
	}
	finish(out, "normalize_threshold");
	return out;
}

GadgetOutput gp_gadget(const Pmdp &m, const std::string &target)
{
	GadgetOutput out = copy_of(m, target);
	out.threshold = frac(1, 2);
	out.value_map = [](const Rational &v) { return v; };
	out.certificate["relation"] =
		"gp u: Pr' = Pr; wd u with some parameter in {0,1}: Pr' = 0";
	// the ≥ / > case split is only argued in the appendix version of the proof
	out.certificate["proof_extended"] = ">=";
	Pmdp &r = out.model;
	if (m.params.empty()) {
		out.certificate["construction"] = "identity (no parameters)";
		finish(out, "gp_gadget");
		return out;
	}
	std::vector<std::pair<std::string, std::string>> pairs;
	for (const auto &x : m.params) {
		std::string a = fresh_state(r, "$gp_" + x);
		r.add_state(a);
		std::string b = fresh_state(r, "$gp'_" + x);
		r.add_state(b);
		pairs.emplace_back(a, b);
	}
	for (size_t i = 0; i < pairs.size(); i++) {
		const std::string &x = m.params[i];
		const auto &[a, b] = pairs[i];
		std::string next = i + 1 < pairs.size() ? pairs[i + 1].first : m.initial;
		r.add_edge(a, kDefaultAction, a, Polynomial::var(x));
		r.add_edge(a, kDefaultAction, b, Polynomial::one_minus(x));
		r.add_edge(b, kDefaultAction, b, Polynomial::one_minus(x));
		r.add_edge(b, kDefaultAction, next, Polynomial::var(x));
	}
	r.initial = pairs.front().first;
	out.certificate["construction"] = "two states per parameter before the initial state";
	finish(out, "gp_gadget");
	return out;
}

} // namespace psyn
