#include "psyn/encode.hpp"

#include <deque>

namespace psyn {

std::string EncodeSpec::str() const
{
	return std::string(inner == Forall ? "forall" : "exists") + "," + to_string(bound) + "," + (space == GP ? "gp" : "wd");
}

EncodeSpec EncodeSpec::parse(std::string_view s)
{
	auto bad = [&] { return std::invalid_argument("bad encoding spec '" + std::string(s) + "', expected e.g. forall,<,gp"); };
	size_t c1 = s.find(','), c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
	if (c2 == std::string_view::npos)
		throw bad();
	std::string_view q = s.substr(0, c1), r = s.substr(c1 + 1, c2 - c1 - 1), sp = s.substr(c2 + 1);
	EncodeSpec e;
	if (q == "forall" || q == "A")
		e.inner = Forall;
	else if (q == "exists" || q == "E")
		e.inner = Exists;
	else
		throw bad();
	try {
		e.bound = parse_rel(r);
	} catch (const std::exception &) {
		throw bad();
	}
	if (e.bound == Rel::Eq)
		throw bad();
	if (sp == "gp")
		e.space = GP;
	else if (sp == "wd")
		e.space = WD;
	else
		throw bad();
	return e;
}

std::vector<EncodeSpec> EncodeSpec::all()
{
	std::vector<EncodeSpec> out;
	for (Space sp : {GP, WD})
		for (Quant q : {Forall, Exists})
			for (Rel r : {Rel::Lt, Rel::Le, Rel::Ge, Rel::Gt})
				out.push_back({q, r, sp});
	std::stable_partition(out.begin(), out.end(), [](const EncodeSpec &e) { return !e.extrapolated(); });
	return out;
}

bool EncodeSpec::extrapolated() const
{
	return inner == Exists && (space == WD || !upper());
}

namespace {

const Rational kHalf = frac(1, 2);

Polynomial bellman_sum(const Pmdp::Row &row)
{
	Polynomial sum;
	for (const auto &[t, p] : row)
		sum += p * Polynomial::var(v_var(t));
	return sum;
}

Expr v_is(const std::string &s, const Rational &c)
{
	return atom(Polynomial::var(v_var(s)), Rel::Eq, Polynomial(c));
}

// P(s,a,s') > 0, or nothing when the label is a positive constant
std::vector<Expr> positive(const Polynomial &p)
{
	if (p.is_constant())
		return {};
	return {atom(p, Rel::Gt, Polynomial(0))};
}

// P(s,a,s') > 0 and p_{s'} and r_s < r_{s'}
Expr progress(const std::string &s, const std::string &t, const Polynomial &p)
{
	std::vector<Expr> cs = positive(p);
	cs.push_back(bvar(p_var(t)));
	cs.push_back(atom(Polynomial::var(r_var(s)), Rel::Lt, Polynomial::var(r_var(t))));
	return and_of(std::move(cs));
}

// some successor of (s,a) other than s itself makes ranked progress
Expr some_progress(const Pmdp &m, const std::string &s, const std::string &a)
{
	std::vector<Expr> ds;
	for (const auto &[t, p] : m.row(s, a))
		if (t != s)
			ds.push_back(progress(s, t, p));
	return or_of(std::move(ds));
}

// predecessor lists over positive entries, restricted to `choice` when given
std::vector<std::vector<int>> preds(const NumMdp &nm, const std::vector<int> *choice)
{
	std::vector<std::vector<int>> pr(nm.n);
	for (int s = 0; s < nm.n; s++)
		for (size_t c = 0; c < nm.rows[s].size(); c++) {
			if (choice && (*choice)[s] != static_cast<int>(c))
				continue;
			for (const auto &[t, q] : nm.rows[s][c].succ)
				pr[t].push_back(s);
		}
	return pr;
}

std::vector<int> bfs_distance(const NumMdp &nm, const std::vector<int> *choice)
{
	auto pr = preds(nm, choice);
	std::vector<int> d(nm.n, -1);
	std::deque<int> q;
	for (int s = 0; s < nm.n; s++)
		if (nm.target[s]) {
			d[s] = 0;
			q.push_back(s);
		}
	while (!q.empty()) {
		int s = q.front();
		q.pop_front();
		for (int p : pr[s])
			if (d[p] < 0) {
				d[p] = d[s] + 1;
				q.push_back(p);
			}
	}
	return d;
}

// round in which s joins the "positive under every scheduler" attractor
std::vector<int> attractor_level(const NumMdp &nm)
{
	std::vector<int> lvl(nm.n, -1);
	for (int s = 0; s < nm.n; s++)
		if (nm.target[s])
			lvl[s] = 0;
	for (int round = 1;; round++) {
		std::vector<int> add;
		for (int s = 0; s < nm.n; s++) {
			if (lvl[s] >= 0 || nm.rows[s].empty())
				continue;
			bool all = true;
			for (const auto &c : nm.rows[s]) {
				bool hit = false;
				for (const auto &[t, q] : c.succ)
					hit = hit || (lvl[t] >= 0 && lvl[t] < round);
				all = all && hit;
			}
			if (all)
				add.push_back(s);
		}
		if (add.empty())
			break;
		for (int s : add)
			lvl[s] = round;
	}
	return lvl;
}

} // namespace

EtrFormula encode(const Pmdp &m, const StateSet &target, const EncodeSpec &spec)
{
	SimpleReport sr = check_simple(m);
	if (!sr.simple)
		throw EncodeError("encode: model is not simple: " + sr.violations.front());
	for (const auto &t : target)
		if (!m.has_state(t))
			throw EncodeError("encode: target state '" + t + "' is not a state of the model");
	if (spec.bound == Rel::Eq)
		throw EncodeError("encode: the bound must be one of <, <=, >=, >");

	EtrFormula f;
	for (const auto &x : m.params)
		f.declare_real(x);
	for (const auto &s : m.states)
		f.declare_real(v_var(s));
	const bool ranked = spec.ranked();
	const Polynomial n_states(static_cast<long>(m.states.size()));
	if (ranked)
		for (const auto &s : m.states) {
			f.declare_bool(p_var(s));
			f.declare_real(r_var(s));
		}

	std::vector<Expr> cs;
	for (const auto &s : m.states)
		if (target.count(s)) {
			cs.push_back(v_is(s, 1));
			if (ranked)
				cs.push_back(bvar(p_var(s)));
		}
	if (ranked)
		for (const auto &s : m.states) {
			cs.push_back(atom(Polynomial::var(r_var(s)), Rel::Ge, Polynomial(0)));
			cs.push_back(atom(Polynomial::var(r_var(s)), Rel::Le, n_states));
		}

	const Mode sense = spec.sense();
	const bool forall = spec.inner == EncodeSpec::Forall;
	ZeroSets zs;
	if (!ranked)
		zs = zero_states(m, target);
	const StateSet &zero = sense == Mode::Max ? zs.forall_zero : zs.exists_zero;

	for (const auto &s : m.states) {
		if (target.count(s))
			continue;
		const Polynomial vs = Polynomial::var(v_var(s));
		auto acts = m.actions(s);
		if (!ranked) {
			if (zero.count(s)) {
				cs.push_back(v_is(s, 0));
				continue;
			}
			std::vector<Expr> bs;
			for (const auto &a : acts) {
				Polynomial sum = bellman_sum(m.row(s, a));
				Rel r = !forall ? Rel::Eq : sense == Mode::Max ? Rel::Ge : Rel::Le;
				bs.push_back(atom(vs, r, sum));
			}
			if (forall)
				for (auto &b : bs)
					cs.push_back(std::move(b));
			else
				cs.push_back(or_of(std::move(bs)));
			continue;
		}

		Expr ps = bvar(p_var(s));
		cs.push_back(implies(lnot(ps), v_is(s, 0)));
		if (!forall && sense == Mode::Max) {
			// the chosen action is consistent and makes progress
			std::vector<Expr> ds;
			for (const auto &a : acts)
				ds.push_back(and_of({atom(vs, Rel::Eq, bellman_sum(m.row(s, a))), some_progress(m, s, a)}));
			cs.push_back(implies(ps, or_of(std::move(ds))));
			continue;
		}
		std::vector<Expr> bs;
		for (const auto &a : acts) {
			Rel r = !forall ? Rel::Eq : sense == Mode::Max ? Rel::Ge : Rel::Le;
			bs.push_back(atom(vs, r, bellman_sum(m.row(s, a))));
		}
		cs.push_back(implies(ps, forall ? and_of(std::move(bs)) : or_of(std::move(bs))));

		std::vector<Expr> path;
		for (const auto &a : acts)
			path.push_back(some_progress(m, s, a));
		if (sense == Mode::Max) {
			cs.push_back(iff(ps, or_of(std::move(path))));
			// p is closed under predecessors, so it cannot drop a state with a path
			for (const auto &a : acts)
				for (const auto &[t, p] : m.row(s, a)) {
					if (t == s)
						continue;
					std::vector<Expr> pre = positive(p);
					pre.push_back(bvar(p_var(t)));
					cs.push_back(implies(and_of(std::move(pre)), ps));
				}
		} else {
			cs.push_back(iff(ps, and_of(std::move(path))));
			if (!forall) {
				std::vector<Expr> every;
				for (const auto &a : acts) {
					std::vector<Expr> some;
					for (const auto &[t, p] : m.row(s, a)) {
						if (t == s)
							continue;
						std::vector<Expr> pre = positive(p);
						pre.push_back(bvar(p_var(t)));
						some.push_back(and_of(std::move(pre)));
					}
					every.push_back(or_of(std::move(some)));
				}
				cs.push_back(implies(and_of(std::move(every)), ps));
			}
		}
	}

	cs.push_back(phi_space(m, spec.param_space()));
	cs.push_back(atom(Polynomial::var(v_var(m.initial)), spec.bound, Polynomial(kHalf)));
	f.body = and_of(std::move(cs));
	f.comment = std::string("exists u in ") + (spec.space == EncodeSpec::GP ? "gp" : "wd") + ", " +
	            (forall ? "forall" : "exists") + " sigma: Pr(<>T) " + to_string(spec.bound) + " 1/2";
	f.check_declared();
	return f;
}

Assignment witness_assignment(const Pmdp &m, const StateSet &target, const EncodeSpec &spec, const Instantiation &u)
{
	ParamSpace space = spec.param_space();
	if (!space.contains(m, u))
		throw EncodeError("witness_assignment: " + to_string(u) + " is not in " + space.str());
	CompiledPmdp cm(m, target);
	NumMdp nm = cm.instantiate(u);
	const Mode sense = spec.sense();
	NumOptimum opt = optimum(nm, sense);
	const auto &names = cm.state_names();

	Assignment a;
	for (const auto &x : m.params)
		a.reals[x] = u.at(x);
	for (int s = 0; s < nm.n; s++)
		a.reals[v_var(names[s])] = opt.values[s];
	if (!spec.ranked())
		return a;

	std::vector<int> dist;
	if (sense == Mode::Min)
		dist = attractor_level(nm);
	else if (spec.inner == EncodeSpec::Exists)
		dist = bfs_distance(nm, &opt.choice);
	else
		dist = bfs_distance(nm, nullptr);
	const long n = static_cast<long>(nm.n);
	for (int s = 0; s < nm.n; s++) {
		// the attractor and the path set agree with value > 0 at u
		bool pos = opt.values[s] > 0;
		a.bools[p_var(names[s])] = pos;
		a.reals[r_var(names[s])] = pos ? Rational(n - dist[s]) : Rational(0);
	}
	return a;
}

} // namespace psyn
