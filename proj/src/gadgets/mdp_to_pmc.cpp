#include "common.hpp"

namespace psyn {

using namespace detail;

bool is_binary(const Pmdp &m, std::string *why)
{
	for (const auto &s : m.states) {
		auto as = m.actions(s);
		if (as.size() > 2) {
			if (why)
				*why = "state '" + s + "' has " + std::to_string(as.size()) + " actions";
			return false;
		}
		if (as.size() == 2)
			for (const auto &a : as)
				if (!is_dirac(m.row(s, a))) {
					if (why)
						*why = "state '" + s + "' has two actions and action '" + a + "' is not Dirac";
					return false;
				}
	}
	return true;
}

GadgetOutput to_binary(const Pmdp &m, const std::string &target)
{
	m.validate();
	m.target(target);
	GadgetOutput out;
	Pmdp &r = out.model;
	r.states = m.states;
	r.params = m.params;
	r.initial = m.initial;
	r.targets = m.targets;
	out.target = target;

	// s -> chain <s,1..k> and the actions it resolves
	struct Chain {
		std::vector<std::string> nodes;
		std::vector<std::string> acts;
	};
	std::map<std::string, Chain> chains;
	for (const auto &s : m.states) {
		auto as = m.actions(s);
		bool ok = as.size() == 1;
		if (as.size() == 2)
			ok = is_dirac(m.row(s, as[0])) && is_dirac(m.row(s, as[1]));
		if (ok) {
			r.trans[s] = m.trans.at(s);
			continue;
		}
		Chain c;
		c.acts = as;
		c.nodes.push_back(s);
		for (size_t i = 1; i < as.size(); i++) {
			std::string n = fresh_state(r, "$" + s + "#" + std::to_string(i + 1));
			r.add_state(n);
			c.nodes.push_back(n);
		}
		size_t k = as.size();
		for (size_t i = 0; i + 1 < k; i++) {
			r.add_edge(c.nodes[i], "next", c.nodes[i + 1], 1);
			const Pmdp::Row &row = m.row(s, as[i]);
			if (is_dirac(row)) {
				r.add_edge(c.nodes[i], "pick", row.begin()->first, 1);
			} else {
				std::string rs = fresh_state(r, "$" + s + "#" + as[i]);
				r.add_edge(c.nodes[i], "pick", rs, 1);
				for (const auto &[t, p] : row)
					r.add_edge(rs, kDefaultAction, t, p);
			}
		}
		for (const auto &[t, p] : m.row(s, as[k - 1]))
			r.add_edge(c.nodes[k - 1], as[k - 1], t, p);
		chains[s] = std::move(c);
	}

	out.threshold = frac(1, 2);
	out.transport = [](const Instantiation &u) { return u; };
	out.transport_back = out.transport;
	out.value_map = [](const Rational &v) { return v; };
	out.scheduler_map = [chains](const Scheduler &sigma) {
		Scheduler o;
		for (const auto &[s, a] : sigma.choice) {
			auto it = chains.find(s);
			if (it == chains.end()) {
				o.choice[s] = a;
				continue;
			}
			const Chain &c = it->second;
			size_t j = std::find(c.acts.begin(), c.acts.end(), a) - c.acts.begin();
			if (j == c.acts.size())
				throw ModelError("scheduler picks '" + a + "' which is not enabled in '" + s + "'");
			for (size_t i = 0; i + 1 < c.nodes.size(); i++)
				o.choice[c.nodes[i]] = i < j ? "next" : "pick";
			o.choice[c.nodes.back()] = c.acts.back();
		}
		return o;
	};
	out.scheduler_back = [chains](const Scheduler &sigma) {
		Scheduler o;
		std::set<std::string> inner;
		for (const auto &[s, c] : chains)
			for (size_t i = 1; i < c.nodes.size(); i++)
				inner.insert(c.nodes[i]);
		for (const auto &[s, a] : sigma.choice) {
			if (inner.count(s))
				continue;
			auto it = chains.find(s);
			if (it == chains.end()) {
				if (a != "pick" && a != "next")
					o.choice[s] = a;
				continue;
			}
			const Chain &c = it->second;
			size_t j = 0;
			while (j + 1 < c.nodes.size()) {
				auto f = sigma.choice.find(c.nodes[j]);
				if (f != sigma.choice.end() && f->second == "pick")
					break;
				j++;
			}
			o.choice[s] = c.acts[j];
		}
		return o;
	};
	out.certificate["relation"] = "min and max reachability preserved at every instantiation";
	out.certificate["chains"] = std::to_string(chains.size());
	finish(out, "to_binary");
	return out;
}

GadgetOutput binary_to_pmc(const Pmdp &m, const std::string &target)
{
	std::string why;
	if (!is_binary(m, &why))
		throw GadgetError("binary_to_pmc: input is not binary: " + why);
	m.validate();
	m.target(target);
	GadgetOutput out;
	Pmdp &r = out.model;
	r.states = m.states;
	r.params = m.params;
	r.initial = m.initial;
	r.targets = m.targets;
	out.target = target;
	for (size_t i = 0; i < m.states.size(); i++) {
		const std::string &s = m.states[i];
		auto as = m.actions(s);
		if (as.size() == 1) {
			for (const auto &[t, p] : m.row(s, as[0]))
				r.add_edge(s, kDefaultAction, t, p);
			continue;
		}
		std::string x = fresh_param(r, "$x" + std::to_string(i));
		r.add_param(x);
		r.add_edge(s, kDefaultAction, m.row(s, as[0]).begin()->first, Polynomial::var(x));
		r.add_edge(s, kDefaultAction, m.row(s, as[1]).begin()->first, Polynomial::one_minus(x));
		out.certificate["x_of." + s] = x;
		out.certificate["first." + s] = as[0];
		out.certificate["second." + s] = as[1];
	}
	out.threshold = frac(1, 2);
	out.transport = [](const Instantiation &u) { return u; };
	out.transport_back = [params = m.params](const Instantiation &u) {
		Instantiation v;
		for (const auto &x : params)
			if (u.count(x))
				v[x] = u.at(x);
		return v;
	};
	out.certificate["relation"] = "x_s in {0,1} corners are the deterministic schedulers";
	finish(out, "binary_to_pmc");
	return out;
}

std::map<std::string, std::string> choice_params(const GadgetOutput &pmc)
{
	std::map<std::string, std::string> out;
	const std::string key = "x_of.";
	for (const auto &[k, v] : pmc.certificate)
		if (k.compare(0, key.size(), key) == 0)
			out[k.substr(key.size())] = v;
	return out;
}

Instantiation corner_of(const GadgetOutput &pmc, const Scheduler &sigma, const Instantiation &u)
{
	Instantiation v = u;
	for (const auto &[s, x] : choice_params(pmc)) {
		auto it = sigma.choice.find(s);
		if (it == sigma.choice.end())
			throw ModelError("scheduler has no choice for state '" + s + "'");
		v[x] = it->second == pmc.certificate.at("first." + s) ? 1 : 0;
	}
	return v;
}

Pmdp moss_family(int n)
{
	if (n < 1)
		throw GadgetError("moss_family: n must be at least 1");
	Pmdp m;
	auto s = [](int i) { return "s" + std::to_string(i); };
	for (int i = 1; i <= n + 1; i++)
		m.add_state(s(i));
	m.add_state("bot");
	m.initial = s(1);
	for (int i = 1; i <= n; i++) {
		std::string x = "x" + std::to_string(i);
		m.add_edge(s(i), "a", s(i + 1), Polynomial::var(x));
		m.add_edge(s(i), "a", "bot", Polynomial::one_minus(x));
		m.add_edge(s(i), "b", s(i + 1), Polynomial::one_minus(x));
		m.add_edge(s(i), "b", "bot", Polynomial::var(x));
	}
	m.add_edge(s(n + 1), kDefaultAction, s(n + 1), 1);
	m.add_edge("bot", kDefaultAction, "bot", 1);
	m.add_target("T", s(n + 1));
	m.metadata["generated_by"] = "moss_family";
	return m;
}

Scheduler moss_scheduler(int n, const Instantiation &corner)
{
	Scheduler sigma;
	for (int i = 1; i <= n; i++)
		sigma.choice["s" + std::to_string(i)] = corner.at("x" + std::to_string(i)) == 1 ? "a" : "b";
	return sigma;
}

} // namespace psyn
