#include "common.hpp"

namespace psyn {

using namespace detail;

// f = (1-x)·q when f(1) = 0
static Polynomial divide_one_minus(const Polynomial &f, const std::string &x)
{
	std::vector<Rational> c = f.univariate_coeffs(x);
	// synthetic division by (x - 1), highest degree first
	size_t d = c.size() - 1;
	std::vector<Rational> q(d);
	Rational carry = 0;
	for (size_t k = d; k >= 1; k--) {
		carry = c[k] + carry;
		q[k - 1] = carry;
	}
	Polynomial r;
	for (size_t k = 0; k < q.size(); k++)
		r += Polynomial(-q[k]) * Polynomial::var(x).pow(static_cast<unsigned>(k));
	return r;
}

GadgetOutput adequate_poly_to_pmc(const Polynomial &f, unsigned cap)
{
	auto vars = f.variables();
	if (vars.size() > 1)
		throw GadgetError("adequate_poly_to_pmc: " + f.str() + " is not univariate");
	std::string x = vars.empty() ? std::string() : *vars.begin();

	unsigned e = 0, d = 0;
	Polynomial r = f;
	if (!x.empty() && !f.is_zero()) {
		e = f.monomial_content().exponent(x);
		r = f.divided_by(Monomial::var(x, e));
		while (!r.is_zero() && r.eval({{x, 1}}) == 0) {
			r = divide_one_minus(r, x);
			d++;
		}
	}
	BinomialRep rep;
	try {
		rep = binomial_representation(r, cap);
	} catch (const ElevationCapExceeded &) {
		// the residual can leave [0,1] even when f does not
		e = d = 0;
		rep = binomial_representation(f, cap);
	}
	unsigned n = rep.n;

	GadgetOutput out;
	Pmdp &m = out.model;
	auto basement = [&](unsigned k) -> std::string {
		if (rep.p[k] == 1)
			return "T";
		if (rep.p[k] == 0)
			return "bot";
		return "h" + std::to_string(n) + "_" + std::to_string(k);
	};
	auto node = [&](unsigned i, unsigned k) {
		return i == n ? basement(k) : "h" + std::to_string(i) + "_" + std::to_string(k);
	};

	std::vector<std::string> chain;
	for (unsigned j = 0; j < e; j++)
		chain.push_back("a" + std::to_string(j + 1));
	for (unsigned j = 0; j < d; j++)
		chain.push_back("b" + std::to_string(j + 1));
	std::string root = node(0, 0);
	for (size_t j = 0; j < chain.size(); j++) {
		std::string next = j + 1 < chain.size() ? chain[j + 1] : root;
		Polynomial go = j < e ? Polynomial::var(x) : Polynomial::one_minus(x);
		Polynomial stop = j < e ? Polynomial::one_minus(x) : Polynomial::var(x);
		m.add_edge(chain[j], kDefaultAction, next, go);
		m.add_edge(chain[j], kDefaultAction, "bot", stop);
	}
	for (unsigned i = 0; i < n; i++)
		for (unsigned k = 0; k <= i; k++) {
			m.add_edge(node(i, k), kDefaultAction, node(i + 1, k), Polynomial::var(x));
			m.add_edge(node(i, k), kDefaultAction, node(i + 1, k + 1), Polynomial::one_minus(x));
		}
	for (unsigned k = 0; k <= n; k++) {
		std::string b = basement(k);
		if (b == "T" || b == "bot")
			continue;
		m.add_edge(b, kDefaultAction, "T", Polynomial(rep.p[k]));
		m.add_edge(b, kDefaultAction, "bot", Polynomial(1 - rep.p[k]));
	}
	m.initial = chain.empty() ? root : chain.front();
	m.add_state(m.initial);
	self_loop(m, "T");
	self_loop(m, "bot");
	m.add_target("T", "T");
	if (!x.empty())
		m.add_param(x);

	out.threshold = frac(1, 2);
	out.polys["f"] = f;
	out.value_map = [](const Rational &v) { return v; };
	out.transport = [](const Instantiation &u) { return u; };
	out.transport_back = out.transport;
	out.certificate["relation"] = "sol = f";
	out.certificate["f"] = f.str();
	out.certificate["height"] = std::to_string(n);
	out.certificate["factor_x"] = std::to_string(e);
	out.certificate["factor_1-x"] = std::to_string(d);
	std::string ps;
	for (unsigned k = 0; k <= n; k++)
		ps += (k ? "," : "") + to_string(rep.p[k]);
	out.certificate["exits"] = ps;
	finish(out, "adequate_poly_to_pmc");
	return out;
}

} // namespace psyn
