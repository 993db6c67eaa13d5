#include "psyn/analysis.hpp"

namespace psyn {

std::string v_var(const std::string &s) { return "v[" + s + "]"; }
std::string p_var(const std::string &s) { return "p[" + s + "]"; }
std::string r_var(const std::string &s) { return "r[" + s + "]"; }

std::string OptimalityReport::verdict() const
{
	if (holds)
		return conclusive ? "holds" : "holds-on-samples";
	return conclusive ? "refuted" : "refuted-on-samples";
}

namespace {

Instantiation midpoint(const Pmdp &m)
{
	Instantiation u;
	for (const auto &x : m.params)
		u[x] = Rational(1, 2);
	return u;
}

struct SigmaParts {
	Expr phi;
	std::map<std::string, Polynomial> den; // sign-normalised denominators
};

SigmaParts build_phi_sigma(const Pmdp &m, const StateSet &target, const Scheduler &sigma, Mode sense,
                           std::vector<std::string> *warnings, const std::vector<Instantiation> *probes)
{
	validate_scheduler(m, sigma);
	SolutionFn sol = solution_function(induced_pmc(m, sigma), target);
	std::vector<Instantiation> pr = probes && !probes->empty() ? *probes : std::vector<Instantiation>{midpoint(m)};
	SigmaParts parts;
	std::map<std::string, Polynomial> num;
	for (const auto &[s, f] : sol.sol) {
		Polynomial g = f.num(), h = f.den();
		Rational h0;
		try {
			h0 = h.eval(pr.front());
		} catch (const MissingParameter &) {
			h0 = 1;
		}
		if (h0 < 0) {
			g = -g;
			h = -h;
		}
		if (warnings)
			for (const auto &u : pr) {
				try {
					if (h.eval(u) <= 0) {
						warnings->push_back("denominator of sol[" + s + "] is not positive at " + to_string(u));
						break;
					}
				} catch (const MissingParameter &) {
				}
			}
		num[s] = g;
		parts.den[s] = h;
	}
	ZeroSets zs = zero_states(m, target);
	Rel rel = sense == Mode::Max ? Rel::Ge : Rel::Le;
	std::vector<Expr> clauses;
	for (const auto &s : m.states) {
		if (target.count(s) || zs.forall_zero.count(s))
			continue;
		std::string chosen = sigma.choice.count(s) ? sigma.choice.at(s) : m.actions(s).front();
		for (const auto &a : m.actions(s)) {
			if (a == chosen)
				continue;
			const auto &row = m.row(s, a);
			std::set<std::string> D{s};
			for (const auto &[t, p] : row)
				D.insert(t);
			auto prod_except = [&](const std::string &skip) {
				Polynomial r(1);
				for (const auto &t : D)
					if (t != skip)
						r *= parts.den.at(t);
				return r;
			};
			Polynomial lhs = num.at(s) * prod_except(s), rhs;
			for (const auto &[t, p] : row)
				if (!num.at(t).is_zero())
					rhs += p * num.at(t) * prod_except(t);
			clauses.push_back(atom(lhs, rel, rhs));
		}
		if (sense == Mode::Min && zs.exists_zero.count(s))
			clauses.push_back(atom(num.at(s), Rel::Eq, Polynomial(0)));
	}
	parts.phi = and_of(std::move(clauses));
	return parts;
}

EtrFormula param_formula(const Pmdp &m, Expr body, const std::string &comment)
{
	EtrFormula f;
	for (const auto &x : m.params)
		f.declare_real(x);
	f.body = std::move(body);
	f.comment = comment;
	return f;
}

} // namespace

Expr phi_sigma(const Pmdp &m, const StateSet &target, const Scheduler &sigma, Mode sense,
               std::vector<std::string> *warnings, const std::vector<Instantiation> *probes)
{
	return build_phi_sigma(m, target, sigma, sense, warnings, probes).phi;
}

Expr phi_space(const Pmdp &m, const ParamSpace &r)
{
	std::vector<Expr> cs;
	bool strict = r.kind == ParamSpace::GP;
	std::set<std::string> seen;
	for (const auto &s : m.states)
		for (const auto &a : m.actions(s)) {
			Polynomial sum;
			for (const auto &[t, p] : m.row(s, a)) {
				sum += p;
				if (p.is_constant() || !seen.insert(p.str()).second)
					continue;
				cs.push_back(atom(p, strict ? Rel::Gt : Rel::Ge, Polynomial(0)));
			}
			if (sum != Polynomial(1) && seen.insert("sum:" + sum.str()).second)
				cs.push_back(atom(sum, Rel::Eq, Polynomial(1)));
		}
	if (r.kind == ParamSpace::EpsBox)
		for (const auto &x : m.params) {
			cs.push_back(atom(Polynomial::var(x), Rel::Ge, Polynomial(r.eps)));
			cs.push_back(atom(Polynomial::var(x), Rel::Le, Polynomial(1 - r.eps)));
		}
	if (r.kind == ParamSpace::Box)
		for (const auto &[x, iv] : r.box) {
			cs.push_back(atom(Polynomial::var(x), iv.lo_open ? Rel::Gt : Rel::Ge, Polynomial(iv.lo)));
			cs.push_back(atom(Polynomial::var(x), iv.hi_open ? Rel::Lt : Rel::Le, Polynomial(iv.hi)));
		}
	return and_of(std::move(cs));
}

namespace {

// exact pointwise test on the instantiated model, used off the
// graph-preserving space where solution functions do not apply
bool locally_optimal_at(const Pmdp &m, const StateSet &target, const Scheduler &sigma, Mode sense, const Instantiation &u)
{
	CompiledPmdp cm(m, target);
	NumMdp nm = cm.instantiate(u);
	auto choice = cm.choices_of(sigma);
	auto v = mc_values(nm, choice);
	auto pos = positive_under_all(nm);
	for (int s = 0; s < nm.n; s++) {
		if (nm.target[s])
			continue;
		if (sense == Mode::Min && !pos[s] && v[s] != 0)
			return false;
		for (const auto &c : nm.rows[s]) {
			Rational q = 0;
			for (const auto &[t, p] : c.succ)
				q += p * v[t];
			if (sense == Mode::Max ? q > v[s] : q < v[s])
				return false;
		}
	}
	return true;
}

} // namespace

OptimalityReport check_scheduler_optimality(const Pmdp &m, const Scheduler &sigma, const StateSet &target, Mode sense,
                                            Where where, const ParamSpace &r, const std::vector<Instantiation> &samples)
{
	if (sense == Mode::Mc)
		throw std::invalid_argument("optimality needs sense min or max");
	OptimalityReport rep;
	rep.where = where;
	SigmaParts parts = build_phi_sigma(m, target, sigma, sense, &rep.warnings, &samples);
	Expr space = phi_space(m, r);
	if (where == Where::Somewhere)
		rep.formula = param_formula(m, and_of({space, parts.phi}),
		                            "sat iff the scheduler is " + std::string(to_string(sense)) + "imal somewhere in " + r.str());
	else
		rep.formula = param_formula(m, and_of({space, lnot(parts.phi)}),
		                            "unsat iff the scheduler is " + std::string(to_string(sense)) + "imal everywhere in " + r.str());

	rep.holds = where == Where::Everywhere;
	for (const auto &u : samples) {
		Classification c = classify_instantiation(m, u);
		if (!r.contains(m, u)) {
			rep.skipped++;
			rep.warnings.push_back("sample " + to_string(u) + " lies outside " + r.str());
			continue;
		}
		bool ok;
		if (c.graph_preserving()) {
			bool vanishes = false;
			for (const auto &[s, h] : parts.den)
				if (h.eval(u) == 0)
					vanishes = true;
			if (vanishes) {
				rep.skipped++;
				rep.warnings.push_back("a denominator vanishes at " + to_string(u) + "; sample skipped");
				continue;
			}
			Assignment a;
			a.reals = u;
			ok = evaluate(parts.phi, a);
		} else {
			ok = locally_optimal_at(m, target, sigma, sense, u);
		}
		ok ? rep.passed++ : rep.failed++;
		if (where == Where::Everywhere && !ok) {
			rep.holds = false;
			rep.conclusive = true;
			rep.point = u;
			break;
		}
		if (where == Where::Somewhere && ok) {
			rep.holds = true;
			rep.conclusive = true;
			rep.point = u;
			break;
		}
	}
	return rep;
}

OssReport verify_oss(const Pmdp &m, const StateSet &target, const std::vector<Scheduler> &omega, const ParamSpace &r,
                     const std::vector<Instantiation> &samples, Mode sense)
{
	OssReport rep;
	std::vector<Expr> fails{phi_space(m, r)};
	for (const auto &w : omega)
		fails.push_back(lnot(phi_sigma(m, target, w, sense, nullptr, &samples)));
	rep.formula = param_formula(m, and_of(std::move(fails)), "sat iff some point of " + r.str() + " has no optimal scheduler in the set");

	CompiledPmdp cm(m, target);
	std::vector<std::vector<int>> choices;
	for (const auto &w : omega)
		choices.push_back(cm.choices_of(w));
	for (const auto &u : samples) {
		if (!r.contains(m, u))
			continue;
		NumMdp nm = cm.instantiate(u);
		Rational best = policy_iteration(nm, sense).values[nm.init];
		bool hit = false;
		for (const auto &ch : choices)
			if (mc_values(nm, ch)[nm.init] == best) {
				hit = true;
				break;
			}
		if (!hit) {
			rep.gap = true;
			rep.gap_at = u;
			rep.best_at_gap = best;
			return rep;
		}
		rep.covered++;
	}
	return rep;
}

} // namespace psyn
