#include "common.hpp"

namespace psyn {

using namespace detail;

std::set<std::string> ConstraintSystem::variables() const
{
	std::set<std::string> out;
	for (const auto &f : polys)
		for (const auto &x : f.variables())
			out.insert(x);
	return out;
}

bool ConstraintSystem::holds_at(const Valuation &u) const
{
	for (const auto &f : polys) {
		Rational v = f.eval(u);
		bool ok = relation == EqZero ? v == 0 : relation == LeZero ? v <= 0 : v < 0;
		if (!ok)
			return false;
	}
	return true;
}

bool ConstraintSystem::in_box(const Valuation &u) const
{
	std::string fresh = notes.count("unbounded") ? notes.at("unbounded") : "";
	for (const auto &x : variables()) {
		if (x.rfind("$d", 0) == 0 && !fresh.empty())
			continue;
		const Rational &v = u.at(x);
		if (box == Closed ? (v < 0 || v > 1) : (v <= 0 || v >= 1))
			return false;
	}
	return true;
}

GadgetOutput ineqs_to_pmdp(const ConstraintSystem &fs)
{
	if (fs.relation != ConstraintSystem::LtZero)
		throw GadgetError("ineqs_to_pmdp: only strict systems (f < 0) are supported");
	if (fs.polys.empty())
		throw GadgetError("ineqs_to_pmdp: empty system");
	const Rational half = frac(1, 2);
	GadgetOutput out;
	Pmdp &p = out.model;
	p.add_state("init");
	p.initial = "init";
	for (size_t i = 0; i < fs.polys.size(); i++) {
		GadgetOutput sub = poly_to_pmc(fs.polys[i], 0, half);
		std::string act = "a" + std::to_string(i + 1);
		Pmdp::Row row = embed(p, sub.model, "g" + std::to_string(i + 1) + "_", {{"T", "T"}, {"bot", "bot"}});
		for (const auto &[t, q] : row)
			p.add_edge("init", act, t, q);
		out.polys["f_" + std::to_string(i + 1)] = fs.polys[i];
	}
	self_loop(p, "T");
	self_loop(p, "bot");
	p.add_target("T", "T");
	out.threshold = half;
	out.transport = [](const Instantiation &u) { return u; };
	out.transport_back = out.transport;
	out.certificate["relation"] = "exists u forall sigma: Pr < 1/2 iff exists u: every f_i[u] < 0";
	out.certificate["box"] = fs.box == ConstraintSystem::Closed ? "closed" : "open";
	finish(out, "ineqs_to_pmdp");
	return out;
}

GadgetOutput two_objective_to_forall(const Pmdp &m, const std::string &t1, const std::string &t2,
                                     const Rational &lambda1, const Rational &lambda2, Rel rel)
{
	require_open_unit(lambda1, "two_objective_to_forall");
	require_open_unit(lambda2, "two_objective_to_forall");
	const Rational half = frac(1, 2);
	if (!(lambda2 < half && half < lambda1))
		throw GadgetError("two_objective_to_forall: needs lambda2 < 1/2 < lambda1, got lambda1 = " +
		                  to_string(lambda1) + ", lambda2 = " + to_string(lambda2));
	if (!m.is_pmc())
		throw GadgetError("two_objective_to_forall: input is not a pMC");
	const StateSet &T1 = m.target(t1), &T2 = m.target(t2);

	GadgetOutput out;
	Pmdp &p = out.model;
	p.params = m.params;
	p.add_state("$init");
	p.initial = "$init";
	auto copy = [](int i, const std::string &s) { return "$" + std::to_string(i) + ":" + s; };
	for (int i : {1, 2}) {
		const StateSet &Ti = i == 1 ? T1 : T2;
		for (const auto &s : m.states) {
			if (Ti.count(s)) {
				p.add_edge(copy(i, s), kDefaultAction, "$t", 1);
				continue;
			}
			for (const auto &[t, q] : m.row(s, m.actions(s).front()))
				p.add_edge(copy(i, s), kDefaultAction, copy(i, t), q);
		}
	}
	// copy 1: Pr/(2λ1) ⋈ 1/2 iff Pr ⋈ λ1; copy 2: c + (1-c)Pr ⋈ 1/2 iff Pr ⋈ λ2
	Rational w1 = 1 / (2 * lambda1);
	Rational c2 = (half - lambda2) / (1 - lambda2);
	p.add_edge("$init", "a1", copy(1, m.initial), Polynomial(w1));
	p.add_edge("$init", "a1", "$bot", Polynomial(1 - w1));
	p.add_edge("$init", "a2", "$t", Polynomial(c2));
	p.add_edge("$init", "a2", copy(2, m.initial), Polynomial(1 - c2));
	self_loop(p, "$t");
	self_loop(p, "$bot");
	p.add_target("T", "$t");

	out.threshold = half;
	out.transport = [](const Instantiation &u) { return u; };
	out.transport_back = out.transport;
	out.certificate["relation"] = std::string("exists u forall sigma: Pr ") + to_string(rel) +
	                              " 1/2 iff exists u: Pr(<>T1) " + to_string(rel) + " lambda1 and Pr(<>T2) " +
	                              to_string(rel) + " lambda2";
	out.certificate["a1_weight"] = to_string(w1);
	out.certificate["a2_direct"] = to_string(c2);
	out.certificate["lambda1"] = to_string(lambda1);
	out.certificate["lambda2"] = to_string(lambda2);
	finish(out, "two_objective_to_forall");
	return out;
}

Polynomial quad_to_quartic(const std::vector<Polynomial> &fs)
{
	Polynomial f;
	for (const auto &g : fs)
		f += g * g;
	return f;
}

Polynomial shift_scale_box(const Polynomial &f)
{
	Polynomial g = f;
	for (const auto &x : f.variables()) {
		g = g.substitute(x, Polynomial::var(x) - Polynomial(1));
		g = g.substitute(x, Polynomial::var(x).scaled(2));
	}
	return g;
}

std::string delta_var(unsigned i)
{
	return i == 0 ? std::string("$d") : "$d" + std::to_string(i);
}

ConstraintSystem ineq_chain_with_delta(const Polynomial &f, unsigned L)
{
	ConstraintSystem cs;
	cs.relation = ConstraintSystem::LtZero;
	cs.box = ConstraintSystem::Closed;
	auto d = [](unsigned i) { return Polynomial::var(delta_var(i)); };
	cs.polys.push_back(f - d(0));
	for (unsigned i = 0; i <= L + 3; i++)
		cs.polys.push_back(d(i) - d(i + 1) * d(i + 1));
	cs.polys.push_back(d(L + 4) - Polynomial(frac(1, 2)));
	cs.notes["unbounded"] = "$d..$d" + std::to_string(L + 4);
	cs.notes["delta_bound"] = "2^(-2^" + std::to_string(L + 5) + ")";
	cs.notes["L"] = std::to_string(L);
	return cs;
}

} // namespace psyn
