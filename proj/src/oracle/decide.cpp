#include "psyn/oracle.hpp"

#include <chrono>
#include <sstream>

namespace psyn {

const char *to_string(Quant q)
{
	return q == Quant::Exists ? "exists" : "forall";
}

std::string Problem::str() const
{
	return std::string(to_string(q1)) + " u " + to_string(q2) + " sigma: Pr " + to_string(rel) + " " +
	       psyn::to_string(lambda);
}

std::string Verdict::answer_str() const
{
	switch (answer) {
	case Yes: return "yes";
	case NoOnGrid: return "no-on-grid";
	case HoldsOnGrid: return "holds-on-grid";
	}
	return "?";
}

std::string Verdict::report() const
{
	std::ostringstream os;
	std::string pr = problem.str();
	if (robust) {
		// the outer quantifier is over schedulers
		pr = std::string(to_string(problem.q1)) + " sigma " + to_string(problem.q2) + " u: Pr " +
		     to_string(problem.rel) + " " + psyn::to_string(problem.lambda);
	}
	os << "answer: " << answer_str() << "\n";
	os << "problem: " << pr << "\n";
	os << "exact: " << (exact ? "true" : "false") << "\n";
	if (point)
		os << (answer == Yes ? "witness: " : "refuted-at: ") << to_string(*point) << "\n";
	if (sigma)
		os << "scheduler: " << sigma->str() << "\n";
	if (value)
		os << "value: " << to_string(*value) << "\n";
	os << "points: " << points << "\n";
	os << "skipped: " << skipped << "\n";
	os << "schedulers: " << schedulers << "\n";
	if (!caveat.empty())
		os << "caveat: " << caveat << "\n";
	os << "seconds: " << seconds << "\n";
	return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool upper(Rel r) { return r == Rel::Lt || r == Rel::Le; }

void check_problem(const Problem &p)
{
	if (p.lambda < 0 || p.lambda > 1)
		throw OracleError("threshold " + to_string(p.lambda) + " is outside [0,1]");
}

size_t check_cap(const Pmdp &m, const OracleConfig &cfg)
{
	size_t n = m.num_schedulers_capped(cfg.enum_cap);
	if (n > cfg.enum_cap)
		throw OracleError("more than " + std::to_string(cfg.enum_cap) + " schedulers, raise the enumeration cap");
	return n;
}

void check_grid(const Pmdp &m, const Grid &grid, const OracleConfig &cfg)
{
	for (const auto &x : m.params)
		if (!grid.axes.count(x))
			throw OracleError("grid has no axis for parameter '" + x + "'");
	if (grid.raw_size() > cfg.max_points)
		throw OracleError("grid has " + std::to_string(grid.raw_size()) + " points, more than the limit " +
		                  std::to_string(cfg.max_points));
}

struct Inner {
	bool ok = false;
	Rational value;
	std::optional<std::vector<int>> choice; // the scheduler the value belongs to
};

// the sigma quantifier at one instantiation
Inner inner_sigma(const NumMdp &nm, const Problem &p, size_t cap)
{
	Inner r;
	if (p.rel == Rel::Eq) {
		NumOptimum lo = optimum(nm, Mode::Min, cap), hi = optimum(nm, Mode::Max, cap);
		const Rational &a = lo.values[nm.init], &b = hi.values[nm.init];
		if (p.q2 == Quant::Forall) {
			r.ok = a == p.lambda && b == p.lambda;
			r.value = a != p.lambda ? a : b;
			r.choice = a != p.lambda ? lo.choice : hi.choice;
		} else {
			// mixing the two extremes at the start reaches every value in between
			r.ok = a <= p.lambda && p.lambda <= b;
			r.value = a == p.lambda || !r.ok ? a : b == p.lambda ? b : p.lambda;
			if (a == p.lambda || !r.ok)
				r.choice = lo.choice;
			else if (b == p.lambda)
				r.choice = hi.choice;
		}
		return r;
	}
	// forall sigma below: the max decides; exists sigma below: the min
	Mode mode = (p.q2 == Quant::Forall) == upper(p.rel) ? Mode::Max : Mode::Min;
	NumOptimum o = optimum(nm, mode, cap);
	r.value = o.values[nm.init];
	r.ok = holds(r.value, p.rel, p.lambda);
	r.choice = o.choice;
	return r;
}

// independent re-check through the model-level analysis entry points
void recheck(const Pmdp &m, const StateSet &target, const Instantiation &u, const Scheduler *sigma,
             const Rational &value, const Problem &p, bool sigma_fixed)
{
	Pmdp mi = instantiate(m, u);
	if (sigma) {
		Rational v = reach_prob_mc(induced_pmc(mi, *sigma), target);
		if (v != value)
			throw OracleError("witness re-check failed at " + to_string(u) + ": scheduler value " + to_string(v) +
			                  " differs from " + to_string(value));
	}
	if (sigma_fixed || p.rel == Rel::Eq)
		return;
	Mode mode = (p.q2 == Quant::Forall) == upper(p.rel) ? Mode::Max : Mode::Min;
	Rational v = minmax_reach(mi, target, mode).value;
	if (v != value || !holds(v, p.rel, p.lambda))
		throw OracleError("witness re-check failed at " + to_string(u) + ": " + to_string(mode) + " value " +
		                  to_string(v));
}

const char *kGridCaveat = "the quantifier over parameters was only checked on the grid";

} // namespace

Verdict decide_reach(const Pmdp &m, const StateSet &target, const Problem &p, const Grid &grid, const OracleConfig &cfg)
{
	auto t0 = Clock::now();
	m.validate();
	check_problem(p);
	check_grid(m, grid, cfg);
	Verdict v;
	v.problem = p;
	v.schedulers = check_cap(m, cfg);
	CompiledPmdp cm(m, target);

	bool want = p.q1 == Quant::Exists;
	std::optional<Inner> hit;
	v.points = grid.for_each(
	    m,
	    [&](const Instantiation &u) {
		    Inner in = inner_sigma(cm.instantiate(u), p, cfg.enum_cap);
		    if (in.ok != want)
			    return true;
		    hit = in;
		    v.point = u;
		    return false;
	    },
	    &v.skipped);

	if (hit) {
		v.value = hit->value;
		if (hit->choice)
			v.sigma = cm.scheduler_of(*hit->choice);
		v.exact = true;
		v.answer = want ? Verdict::Yes : Verdict::NoOnGrid;
		if (want)
			recheck(m, target, *v.point, v.sigma ? &*v.sigma : nullptr, hit->value, p, false);
	} else {
		v.answer = want ? Verdict::NoOnGrid : Verdict::HoldsOnGrid;
		v.caveat = kGridCaveat;
	}
	v.caveat += std::string(v.caveat.empty() ? "" : "; ") + "grid " + grid.str();
	v.seconds = since(t0);
	return v;
}

Verdict decide_rob_reach(const Pmdp &m, const StateSet &target, const Problem &p, const Grid &grid,
                         const OracleConfig &cfg)
{
	auto t0 = Clock::now();
	m.validate();
	check_problem(p);
	check_grid(m, grid, cfg);
	if (p.rel == Rel::Eq)
		throw OracleError("robust problems need a strict or non-strict inequality");
	Verdict v;
	v.problem = p;
	v.robust = true;
	v.schedulers = check_cap(m, cfg);
	CompiledPmdp cm(m, target);

	// every deterministic memoryless scheduler as a choice vector
	std::vector<std::vector<int>> scheds;
	{
		std::vector<int> ch(cm.num_states(), 0);
		for (;;) {
			scheds.push_back(ch);
			int s = 0;
			while (s < cm.num_states() && ++ch[s] >= static_cast<int>(cm.rows()[s].size()))
				ch[s++] = 0;
			if (s == cm.num_states())
				break;
		}
	}

	const bool inner_all = p.q2 == Quant::Forall;
	// per scheduler: still possible (forall u) / already witnessed (exists u)
	std::vector<char> state(scheds.size(), inner_all ? 1 : 0);
	std::vector<std::optional<Instantiation>> where(scheds.size());
	std::vector<Rational> value_at(scheds.size());
	size_t open = scheds.size();
	bool done = false;

	v.points = grid.for_each(
	    m,
	    [&](const Instantiation &u) {
		    NumMdp nm = cm.instantiate(u);
		    for (size_t i = 0; i < scheds.size(); i++) {
			    if (state[i] != (inner_all ? 1 : 0))
				    continue;
			    Rational val = mc_values(nm, scheds[i])[nm.init];
			    bool ok = holds(val, p.rel, p.lambda);
			    if (ok == inner_all)
				    continue;
			    // forall u refuted at u, or exists u witnessed at u
			    state[i] = inner_all ? 0 : 1;
			    where[i] = u;
			    value_at[i] = val;
			    open--;
			    if (p.q1 == Quant::Exists && !inner_all) {
				    v.answer = Verdict::Yes;
				    v.exact = true;
				    v.point = u;
				    v.sigma = cm.scheduler_of(scheds[i]);
				    v.value = val;
				    done = true;
				    return false;
			    }
			    if (p.q1 == Quant::Forall && inner_all) {
				    v.answer = Verdict::NoOnGrid;
				    v.exact = true;
				    v.point = u;
				    v.sigma = cm.scheduler_of(scheds[i]);
				    v.value = val;
				    done = true;
				    return false;
			    }
		    }
		    return open > 0;
	    },
	    &v.skipped);

	if (!done) {
		if (p.q1 == Quant::Exists && inner_all) {
			auto it = std::find(state.begin(), state.end(), 1);
			if (it != state.end()) {
				size_t i = static_cast<size_t>(it - state.begin());
				v.answer = Verdict::Yes;
				v.sigma = cm.scheduler_of(scheds[i]);
				v.caveat = kGridCaveat;
			} else {
				// every scheduler refuted at an exact point
				v.answer = Verdict::NoOnGrid;
				v.exact = true;
			}
		} else if (p.q1 == Quant::Forall && !inner_all) {
			auto it = std::find(state.begin(), state.end(), 0);
			if (it == state.end()) {
				v.answer = Verdict::Yes;
				v.exact = true;
			} else {
				v.answer = Verdict::NoOnGrid;
				v.sigma = cm.scheduler_of(scheds[static_cast<size_t>(it - state.begin())]);
				v.caveat = kGridCaveat;
			}
		} else if (p.q1 == Quant::Exists) {
			v.answer = Verdict::NoOnGrid;
			v.caveat = kGridCaveat;
		} else {
			v.answer = Verdict::HoldsOnGrid;
			v.caveat = kGridCaveat;
		}
	}
	if (v.point && v.sigma && v.value)
		recheck(m, target, *v.point, &*v.sigma, *v.value, p, true);
	v.caveat += std::string(v.caveat.empty() ? "" : "; ") + "grid " + grid.str();
	v.seconds = since(t0);
	return v;
}

} // namespace psyn
