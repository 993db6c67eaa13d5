#include "common.hpp"

#include <sstream>

namespace psyn {

using namespace detail;

bool Cnf::satisfied_by(const std::vector<bool> &assignment) const
{
	for (const auto &c : clauses) {
		bool ok = false;
		for (int l : c)
			ok = ok || assignment.at(static_cast<size_t>(std::abs(l))) == (l > 0);
		if (!ok)
			return false;
	}
	return true;
}

std::string Cnf::str() const
{
	std::ostringstream os;
	for (size_t j = 0; j < clauses.size(); j++) {
		os << (j ? " & (" : "(");
		for (size_t r = 0; r < clauses[j].size(); r++)
			os << (r ? " | " : "") << (clauses[j][r] < 0 ? "-x" : "x") << std::abs(clauses[j][r]);
		os << ")";
	}
	return os.str();
}

static void check_3cnf(const Cnf &phi, const char *who)
{
	if (phi.vars < 1)
		throw GadgetError(std::string(who) + ": formula has no variables");
	for (size_t j = 0; j < phi.clauses.size(); j++) {
		if (phi.clauses[j].size() != 3)
			throw GadgetError(std::string(who) + ": clause " + std::to_string(j + 1) + " has " +
			                  std::to_string(phi.clauses[j].size()) + " literals, expected 3");
		for (int l : phi.clauses[j])
			if (l == 0 || std::abs(l) > phi.vars)
				throw GadgetError(std::string(who) + ": literal " + std::to_string(l) + " out of range");
	}
}

std::optional<std::vector<bool>> find_assignment(const Cnf &phi)
{
	if (phi.vars > 24)
		throw GadgetError("find_assignment: too many variables for brute force");
	std::vector<bool> a(static_cast<size_t>(phi.vars) + 1);
	for (unsigned long bits = 0; bits < (1ul << phi.vars); bits++) {
		for (int i = 1; i <= phi.vars; i++)
			a[static_cast<size_t>(i)] = (bits >> (i - 1)) & 1;
		if (phi.satisfied_by(a))
			return a;
	}
	return std::nullopt;
}

static std::string lit_state(int l)
{
	return (l > 0 ? "x" : "nx") + std::to_string(std::abs(l));
}

static std::string y(int i) { return "y" + std::to_string(i); }
static std::string z1(size_t j) { return "z" + std::to_string(j + 1) + "_1"; }
static std::string zs(size_t j) { return "z" + std::to_string(j + 1) + "_s"; }

GadgetOutput sat_to_pmc(const Cnf &phi)
{
	check_3cnf(phi, "sat_to_pmc");
	int m = phi.vars;
	size_t k = phi.clauses.size();
	GadgetOutput out;
	Pmdp &p = out.model;
	for (int i = 0; i <= m; i++)
		p.add_state("v" + std::to_string(i));
	for (int i = 1; i <= m; i++) {
		p.add_state(lit_state(i));
		p.add_state(lit_state(-i));
	}
	for (size_t j = 0; j < k; j++) {
		p.add_state("c" + std::to_string(j + 1));
		p.add_state("c" + std::to_string(j + 1) + "b");
	}
	p.add_state("T");
	p.add_state("bot");
	p.initial = "v0";

	for (int i = 1; i <= m; i++) {
		std::string prev = "v" + std::to_string(i - 1), cur = "v" + std::to_string(i);
		Polynomial yi = Polynomial::var(y(i)), ny = Polynomial::one_minus(y(i));
		p.add_edge(prev, kDefaultAction, lit_state(i), yi);
		p.add_edge(prev, kDefaultAction, lit_state(-i), ny);
		p.add_edge(lit_state(i), kDefaultAction, cur, yi);
		p.add_edge(lit_state(i), kDefaultAction, "bot", ny);
		p.add_edge(lit_state(-i), kDefaultAction, cur, ny);
		p.add_edge(lit_state(-i), kDefaultAction, "bot", yi);
	}
	std::string vm = "v" + std::to_string(m);
	Polynomial share(frac(1, static_cast<long>(k) + 1));
	p.add_edge(vm, kDefaultAction, "T", share);
	for (size_t j = 0; j < k; j++) {
		std::string c = "c" + std::to_string(j + 1), cb = c + "b";
		const auto &cl = phi.clauses[j];
		p.add_edge(vm, kDefaultAction, c, share);
		p.add_edge(c, kDefaultAction, lit_state(cl[0]), Polynomial::var(z1(j)));
		p.add_edge(c, kDefaultAction, cb, Polynomial::one_minus(z1(j)));
		p.add_edge(cb, kDefaultAction, lit_state(cl[1]), Polynomial::var(zs(j)));
		p.add_edge(cb, kDefaultAction, lit_state(cl[2]), Polynomial::one_minus(zs(j)));
		// make sure both parameters are declared even if the labels merged
		p.add_param(z1(j));
		p.add_param(zs(j));
	}
	for (int i = 1; i <= m; i++)
		p.add_param(y(i));
	self_loop(p, "T");
	self_loop(p, "bot");
	p.add_target("T", "T");

	out.threshold = frac(2, 3);
	out.certificate["relation"] = "phi sat iff Pr > 2/3 for some well-defined u";
	out.certificate["formula"] = phi.str();
	out.certificate["states"] = std::to_string(p.states.size());
	finish(out, "sat_to_pmc");
	return out;
}

Instantiation sat_instantiation(const Cnf &phi, const std::vector<bool> &assignment)
{
	check_3cnf(phi, "sat_instantiation");
	Instantiation u;
	for (int i = 1; i <= phi.vars; i++)
		u[y(i)] = assignment.at(static_cast<size_t>(i)) ? 1 : 0;
	for (size_t j = 0; j < phi.clauses.size(); j++) {
		const auto &cl = phi.clauses[j];
		int r = 0;
		while (r < 3 && assignment.at(static_cast<size_t>(std::abs(cl[r]))) != (cl[r] > 0))
			r++;
		if (r == 3)
			throw GadgetError("sat_instantiation: clause " + std::to_string(j + 1) + " is not satisfied");
		u[z1(j)] = r == 0 ? 1 : 0;
		u[zs(j)] = r == 2 ? 0 : 1;
	}
	return u;
}

GadgetOutput sat_to_robust_pmdp(const Cnf &phi)
{
	check_3cnf(phi, "sat_to_robust_pmdp");
	int n = phi.vars;
	size_t m = phi.clauses.size();
	if (m == 0)
		throw GadgetError("sat_to_robust_pmdp: formula has no clauses");
	for (int l = -n; l <= n; l++) {
		if (l == 0)
			continue;
		bool everywhere = true;
		for (const auto &c : phi.clauses)
			everywhere = everywhere && std::find(c.begin(), c.end(), l) != c.end();
		if (everywhere) {
			std::vector<bool> a(static_cast<size_t>(n) + 1, false);
			a[static_cast<size_t>(std::abs(l))] = l > 0;
			throw TrivialSat("sat_to_robust_pmdp: literal " + std::to_string(l) +
			                     " occurs in every clause, the formula is trivially satisfiable",
			                 a);
		}
	}

	GadgetOutput out;
	Pmdp &p = out.model;
	p.add_state("init");
	for (int i = 1; i <= n; i++)
		p.add_state("X" + std::to_string(i));
	p.add_state("T");
	p.add_state("F");
	p.initial = "init";
	const Rational half = frac(1, 2);
	Polynomial x = Polynomial::var("x");
	for (int i = 1; i <= n; i++) {
		std::string X = "X" + std::to_string(i);
		p.add_edge("init", kDefaultAction, X, Polynomial(frac(1, n)));
		for (int lit : {i, -i}) {
			std::string act = lit > 0 ? "alpha" : "beta";
			Polynomial prod(1);
			for (size_t k = 0; k < m; k++) {
				const auto &c = phi.clauses[k];
				if (std::find(c.begin(), c.end(), lit) == c.end()) {
					Polynomial d = x - Polynomial(frac(static_cast<long>(k) + 1, static_cast<long>(m) + 1));
					prod *= d * d;
				}
			}
			Polynomial f = (Polynomial(1) + prod).scaled(half);
			out.polys["f_" + std::to_string(i) + "_" + act] = f;
			GadgetOutput sub = poly_to_pmc(f, half, half);
			Pmdp::Row row = embed(p, sub.model, "$" + X + act + "_", {{"T", "T"}, {"bot", "F"}});
			for (const auto &[t, q] : row)
				p.add_edge(X, act, t, q);
			out.certificate["gadget." + X + "." + act] = sub.certificate.at("value");
		}
	}
	p.add_param("x");
	self_loop(p, "T");
	self_loop(p, "F");
	p.add_target("T", "T");

	out.threshold = half;
	out.scheduler_map = nullptr;
	out.certificate["relation"] = "phi sat iff some scheduler has Pr > 1/2 for all wd u";
	out.certificate["formula"] = phi.str();
	out.certificate["mandatory_points"] = "k/" + std::to_string(m + 1) + " for k = 1.." + std::to_string(m);
	finish(out, "sat_to_robust_pmdp");
	return out;
}

Scheduler robust_scheduler_of(const std::vector<bool> &assignment)
{
	Scheduler s;
	for (size_t i = 1; i < assignment.size(); i++)
		s.choice["X" + std::to_string(i)] = assignment[i] ? "alpha" : "beta";
	return s;
}

std::vector<bool> robust_assignment_of(const Scheduler &sigma, int vars)
{
	std::vector<bool> a(static_cast<size_t>(vars) + 1, false);
	for (int i = 1; i <= vars; i++)
		a[static_cast<size_t>(i)] = sigma.choice.at("X" + std::to_string(i)) == "alpha";
	return a;
}

} // namespace psyn
