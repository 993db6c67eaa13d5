#include "cli.hpp"
#include "suites.hpp"

#include "psyn/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace psyn::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

// ---- config ----

namespace {

unsigned long parse_count(const std::string &v, const std::string &what)
{
	size_t pos = 0;
	unsigned long n = 0;
	try {
		n = std::stoul(v, &pos);
	} catch (const std::exception &) {
		pos = 0;
	}
	if (pos == 0 || pos != v.size())
		throw std::invalid_argument(what + ": expected a non-negative integer, got '" + v + "'");
	return n;
}

double parse_seconds(const std::string &v, const std::string &what)
{
	size_t pos = 0;
	double d = 0;
	try {
		d = std::stod(v, &pos);
	} catch (const std::exception &) {
		pos = 0;
	}
	if (pos == 0 || pos != v.size())
		throw std::invalid_argument(what + ": expected a number of seconds, got '" + v + "'");
	return d;
}

Config::Format parse_format(const std::string &v, const std::string &what)
{
	if (v == "human")
		return Config::Human;
	if (v == "structured" || v == "json")
		return Config::Structured;
	throw std::invalid_argument(what + ": format must be human or structured, got '" + v + "'");
}

std::string read_file(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw ModelError("cannot open '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
	fs::path p(path);
	if (p.has_parent_path())
		fs::create_directories(p.parent_path());
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw ModelError("cannot write '" + path + "'");
	out << text;
}

} // namespace

void Config::apply_file(const std::string &path)
{
	ojson j;
	try {
		j = ojson::parse(read_file(path));
	} catch (const ojson::parse_error &e) {
		throw std::invalid_argument("config " + path + ": " + e.what());
	}
	if (!j.is_object())
		throw std::invalid_argument("config " + path + ": expected a JSON object");
	for (const auto &[k, v] : j.items()) {
		std::string where = "config " + path + ": " + k;
		auto str = [&] {
			if (v.is_string())
				return v.get<std::string>();
			if (v.is_number())
				return v.dump();
			throw std::invalid_argument(where + ": expected a string or number");
		};
		if (k == "solver")
			solver = str();
		else if (k == "timeout")
			timeout_s = parse_seconds(str(), where);
		else if (k == "enum_cap")
			enum_cap = parse_count(str(), where);
		else if (k == "resolution")
			resolution = static_cast<unsigned>(parse_count(str(), where));
		else if (k == "out_dir")
			out_dir = str();
		else if (k == "format")
			format = parse_format(str(), where);
		else
			throw std::invalid_argument(where + ": unknown key");
	}
}

void Config::apply_env()
{
	auto get = [](const char *name) -> const char * {
		const char *v = std::getenv(name);
		return v && *v ? v : nullptr;
	};
	if (auto v = get("PSYN_SMT_SOLVER"))
		solver = v;
	if (auto v = get("PSYN_SMT_TIMEOUT"))
		timeout_s = parse_seconds(v, "PSYN_SMT_TIMEOUT");
	if (auto v = get("PSYN_ENUM_CAP"))
		enum_cap = parse_count(v, "PSYN_ENUM_CAP");
	if (auto v = get("PSYN_RESOLUTION"))
		resolution = static_cast<unsigned>(parse_count(v, "PSYN_RESOLUTION"));
	if (auto v = get("PSYN_OUT_DIR"))
		out_dir = v;
	if (auto v = get("PSYN_FORMAT"))
		format = parse_format(v, "PSYN_FORMAT");
}

void Config::check() const
{
	if (!(timeout_s > 0))
		throw std::invalid_argument("timeout must be positive");
	if (enum_cap < 1)
		throw std::invalid_argument("enumeration cap must be at least 1");
	if (resolution < 2)
		throw std::invalid_argument("grid resolution must be at least 2");
}

// ---- inputs ----

Cnf parse_dimacs(const std::string &text)
{
	Cnf phi;
	bool header = false;
	size_t declared = 0;
	std::vector<int> cur;
	std::istringstream in(text);
	std::string line;
	int lineno = 0;
	auto fail = [&](const std::string &msg) { return ModelError("dimacs line " + std::to_string(lineno) + ": " + msg); };
	while (std::getline(in, line)) {
		lineno++;
		std::istringstream ls(line);
		std::string tok;
		if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%')
			continue;
		if (tok == "p") {
			std::string kind;
			long v = -1, c = -1;
			if (header || !(ls >> kind >> v >> c) || kind != "cnf" || v < 0 || c < 0)
				throw fail("bad problem line");
			header = true;
			phi.vars = static_cast<int>(v);
			declared = static_cast<size_t>(c);
			continue;
		}
		if (!header)
			throw fail("clause before the 'p cnf' line");
		do {
			long l = 0;
			size_t pos = 0;
			try {
				l = std::stol(tok, &pos);
			} catch (const std::exception &) {
				pos = 0;
			}
			if (pos == 0 || pos != tok.size())
				throw fail("bad literal '" + tok + "'");
			if (l == 0) {
				phi.clauses.push_back(cur);
				cur.clear();
			} else {
				if (std::labs(l) > phi.vars)
					throw fail("literal " + tok + " exceeds the declared variable count");
				cur.push_back(static_cast<int>(l));
			}
		} while (ls >> tok);
	}
	if (!header)
		throw ModelError("dimacs: missing 'p cnf' line");
	if (!cur.empty())
		phi.clauses.push_back(cur);
	if (phi.clauses.size() != declared)
		throw ModelError("dimacs: header declares " + std::to_string(declared) + " clauses, found " +
		                 std::to_string(phi.clauses.size()));
	return phi;
}

std::vector<Polynomial> parse_poly_lines(const std::string &text)
{
	std::vector<Polynomial> out;
	std::istringstream in(text);
	std::string line;
	while (std::getline(in, line)) {
		auto hash = line.find('#');
		if (hash != std::string::npos)
			line.resize(hash);
		if (line.find_first_not_of(" \t\r") == std::string::npos)
			continue;
		out.push_back(parse_poly(line));
	}
	return out;
}

Problem parse_problem(const std::string &text)
{
	std::vector<std::string> parts;
	std::stringstream ss(text);
	std::string p;
	while (std::getline(ss, p, ','))
		parts.push_back(p);
	auto bad = [&] {
		return std::invalid_argument("bad problem '" + text + "', expected Q1,Q2,REL,LAMBDA like exists,forall,>=,1/2");
	};
	if (parts.size() != 4)
		throw bad();
	auto quant = [&](const std::string &q) {
		if (q == "exists" || q == "E")
			return Quant::Exists;
		if (q == "forall" || q == "A")
			return Quant::Forall;
		throw bad();
	};
	Problem pr;
	pr.q1 = quant(parts[0]);
	pr.q2 = quant(parts[1]);
	try {
		pr.rel = parse_rel(parts[2]);
		pr.lambda = parse_rational(parts[3]);
	} catch (const std::exception &) {
		throw bad();
	}
	return pr;
}

std::vector<std::string> builtin_models()
{
	return {"loop", "pyramid", "chonev", "moss<N>"};
}

AnyModel resolve_model(const std::string &name)
{
	if (fs::exists(name))
		return load_model(name);
	if (name == "loop") {
		Pmdp m;
		m.add_state("s");
		m.add_state("T");
		m.initial = "s";
		m.add_edge("s", kDefaultAction, "s", Polynomial::one_minus("p"));
		m.add_edge("s", kDefaultAction, "T", Polynomial::var("p"));
		m.add_edge("T", kDefaultAction, "T", 1);
		m.add_target("T", "T");
		return m;
	}
	if (name == "pyramid")
		return adequate_poly_to_pmc(parse_poly("2*x*(1-x) + 1/4")).model;
	if (name == "chonev")
		return poly_to_pmc(parse_poly("-2*x^2*y + y"), 5, frac(7, 8)).model;
	if (name.rfind("moss", 0) == 0 && name.size() > 4 && name.find_first_not_of("0123456789", 4) == std::string::npos)
		return moss_family(std::stoi(name.substr(4)));
	throw ModelError("no model file or built-in model named '" + name + "'");
}

// ---- reports ----

namespace {

struct Report {
	ojson j = ojson::object();

	template <class T>
	void add(const std::string &k, const T &v) { j[k] = v; }

	void print(std::ostream &out, Config::Format f) const
	{
		if (f == Config::Structured) {
			out << j.dump(2) << "\n";
			return;
		}
		for (const auto &[k, v] : j.items()) {
			out << k << ":";
			if (v.is_string())
				out << " " << v.get<std::string>();
			else if (v.is_array()) {
				for (size_t i = 0; i < v.size(); i++)
					out << (i ? ", " : " ") << (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
			} else
				out << " " << v.dump();
			out << "\n";
		}
	}
};

struct UsageError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

Pmdp need_pmdp(const AnyModel &m)
{
	if (auto p = std::get_if<Pmdp>(&m))
		return *p;
	throw UsageError("expected a pMDP model, got a stochastic game");
}

const StateSet &target_of(const Pmdp &m, const std::string &name)
{
	return m.target(name);
}

std::vector<std::string> sorted(const StateSet &s)
{
	return {s.begin(), s.end()};
}

std::string output_path(const Config &cfg, const std::string &explicit_path, const std::string &stem)
{
	if (!explicit_path.empty())
		return explicit_path;
	return (fs::path(cfg.out_dir) / (stem + ".json")).string();
}

ParamSpace parse_space(const std::string &s)
{
	if (s == "wd")
		return ParamSpace::wd();
	if (s == "gp")
		return ParamSpace::gp();
	if (s.rfind("eps:", 0) == 0)
		return ParamSpace::eps_box(parse_rational(s.substr(4)));
	throw UsageError("space must be wd, gp or eps:<e>, got '" + s + "'");
}

std::vector<Rational> parse_rationals(const std::string &s)
{
	std::vector<Rational> out;
	std::stringstream ss(s);
	std::string p;
	while (std::getline(ss, p, ','))
		if (!p.empty())
			out.push_back(parse_rational(p));
	return out;
}

void describe_gadget(Report &r, const GadgetOutput &g)
{
	r.add("states", g.model.states.size());
	r.add("parameters", g.model.params);
	r.add("threshold", to_string(g.threshold));
	r.add("target", sorted(g.target_states()));
	for (const auto &[k, v] : g.certificate)
		r.add("cert." + k, v);
}

// ---- subcommands ----

struct Ctx {
	Config cfg;
	std::ostream &out;
	std::ostream &err;
};

int cmd_validate(Ctx &c, const std::string &path)
{
	AnyModel am = resolve_model(path);
	Report r;
	r.add("model", path);
	if (auto g = std::get_if<Csrg>(&am)) {
		g->validate();
		r.add("type", "csrg");
		r.add("states", g->states.size());
		r.add("initial", g->initial);
		r.add("targets", sorted(g->targets));
	} else {
		const Pmdp &m = std::get<Pmdp>(am);
		m.validate();
		size_t acts = 0;
		for (const auto &s : m.states)
			acts = std::max(acts, m.actions(s).size());
		SimpleReport sr = check_simple(m);
		r.add("type", m.is_pmc() ? "pmc" : "pmdp");
		r.add("states", m.states.size());
		r.add("parameters", m.params);
		r.add("initial", m.initial);
		r.add("max_actions", acts);
		r.add("simple", sr.simple);
		if (!sr.simple)
			r.add("simple_violations", sr.violations);
		std::vector<std::string> ts;
		for (const auto &[k, v] : m.targets)
			ts.push_back(k + "={" + [&] {
				std::string s;
				for (const auto &x : v)
					s += (s.empty() ? "" : ",") + x;
				return s;
			}() + "}");
		r.add("targets", ts);
	}
	r.add("valid", true);
	r.print(c.out, c.cfg.format);
	return kOk;
}

struct AnalyzeOpts {
	std::string model, target = "T", scheduler, at, check, where = "everywhere", space = "gp";
	bool sol = false;
};

int cmd_analyze(Ctx &c, const AnalyzeOpts &o)
{
	Pmdp m = need_pmdp(resolve_model(o.model));
	m.validate();
	const StateSet &T = target_of(m, o.target);
	Report r;
	r.add("model", o.model);
	r.add("target", sorted(T));
	std::optional<Scheduler> sigma;
	if (!o.scheduler.empty()) {
		sigma = parse_scheduler(o.scheduler);
		validate_scheduler(m, *sigma);
		r.add("scheduler", sigma->str());
	}
	Pmdp chain = sigma ? induced_pmc(m, *sigma) : m;
	int code = kOk;

	if (o.sol) {
		if (!chain.is_pmc())
			throw UsageError("--sol needs a pMC or a --scheduler");
		SolutionFn f = solution_function(chain, T);
		const RationalFunction &s = f.at(chain.initial);
		if (s.is_polynomial())
			r.add("sol", s.num().scaled(Rational(1) / s.den().constant_term()).str());
		else
			r.add("sol", s.str());
	}
	if (!o.at.empty()) {
		Instantiation u = parse_instantiation(o.at);
		Classification cl = classify_instantiation(m, u);
		r.add("at", to_string(u));
		r.add("instantiation", to_string(cl.kind));
		if (!cl.well_defined())
			throw ModelError("instantiation is not well-defined: " + cl.reason);
		Pmdp mi = instantiate(chain, u);
		if (mi.is_pmc()) {
			r.add("value", to_string(reach_prob_mc(mi, T)));
		} else {
			ValueResult lo = minmax_reach(mi, T, Mode::Min, c.cfg.enum_cap);
			ValueResult hi = minmax_reach(mi, T, Mode::Max, c.cfg.enum_cap);
			r.add("min", to_string(lo.value));
			r.add("min_scheduler", lo.witness->str());
			r.add("max", to_string(hi.value));
			r.add("max_scheduler", hi.witness->str());
		}
	} else if (m.is_parameter_free()) {
		if (chain.is_pmc()) {
			r.add("value", to_string(reach_prob_mc(chain, T)));
		} else {
			r.add("min", to_string(minmax_reach(chain, T, Mode::Min, c.cfg.enum_cap).value));
			r.add("max", to_string(minmax_reach(chain, T, Mode::Max, c.cfg.enum_cap).value));
		}
	}
	if (!o.check.empty()) {
		if (!sigma)
			throw UsageError("--check-optimal needs --scheduler");
		Mode sense;
		if (o.check == "max")
			sense = Mode::Max;
		else if (o.check == "min")
			sense = Mode::Min;
		else
			throw UsageError("--check-optimal takes min or max");
		Where where;
		if (o.where == "everywhere")
			where = Where::Everywhere;
		else if (o.where == "somewhere")
			where = Where::Somewhere;
		else
			throw UsageError("--where takes somewhere or everywhere");
		ParamSpace sp = parse_space(o.space);
		Grid g = Grid::make(m, sp, c.cfg.resolution);
		OptimalityReport rep = check_scheduler_optimality(m, *sigma, T, sense, where, sp, g.points(m));
		r.add("optimality", rep.verdict());
		if (rep.point)
			r.add("optimality_point", to_string(*rep.point));
		r.add("optimality_samples", std::to_string(rep.passed) + " passed, " + std::to_string(rep.failed) +
		                                " failed, " + std::to_string(rep.skipped) + " skipped");
		for (const auto &w : rep.warnings)
			c.err << "psyn: warning: " << w << "\n";
		if (!rep.holds)
			code = kVerdictNo;
	}
	if (!o.sol && o.at.empty() && !m.is_parameter_free()) {
		ZeroSets z = zero_states(m, T);
		r.add("simple", check_simple(m).simple);
		r.add("schedulers", m.num_schedulers_capped(c.cfg.enum_cap));
		r.add("forall_zero", sorted(z.forall_zero));
		r.add("exists_zero", sorted(z.exists_zero));
	}
	r.print(c.out, c.cfg.format);
	return code;
}

struct GadgetOpts {
	std::string name, model, target = "T", lambda, mu, poly, output;
	int n = 0;
};

const std::vector<std::string> kGadgets = {"threshold", "normalize", "gp", "poly", "adequate", "simple",
                                           "binary", "binary-pmc", "moss", "csrg"};

int cmd_gadget(Ctx &c, const GadgetOpts &o)
{
	auto need_model = [&]() {
		if (o.model.empty())
			throw UsageError("gadget " + o.name + " needs a model argument");
		Pmdp m = need_pmdp(resolve_model(o.model));
		m.validate();
		return m;
	};
	auto need = [&](const std::string &v, const char *flag) {
		if (v.empty())
			throw UsageError(std::string("gadget ") + o.name + " needs " + flag);
		return v;
	};
	GadgetOutput g;
	if (o.name == "threshold")
		g = threshold_gadget(need_model(), o.target, parse_rational(need(o.lambda, "--lambda")));
	else if (o.name == "normalize")
		g = normalize_threshold(need_model(), o.target, parse_rational(need(o.lambda, "--lambda")));
	else if (o.name == "gp")
		g = gp_gadget(need_model(), o.target);
	else if (o.name == "poly")
		g = poly_to_pmc(parse_poly(need(o.poly, "--poly")), parse_rational(need(o.mu, "--mu")),
		                parse_rational(need(o.lambda, "--lambda")));
	else if (o.name == "adequate")
		g = adequate_poly_to_pmc(parse_poly(need(o.poly, "--poly")));
	else if (o.name == "simple")
		g = nonsimple_pmc_to_simple_acyclic(need_model(), o.target, parse_rational(need(o.lambda, "--lambda")));
	else if (o.name == "binary")
		g = to_binary(need_model(), o.target);
	else if (o.name == "binary-pmc")
		g = binary_to_pmc(need_model(), o.target);
	else if (o.name == "moss") {
		if (o.n < 1)
			throw UsageError("gadget moss needs --n >= 1");
		g.model = moss_family(o.n);
		g.threshold = frac(1, 2);
	} else if (o.name == "csrg") {
		if (o.model.empty())
			throw UsageError("gadget csrg needs a game argument");
		AnyModel am = resolve_model(o.model);
		auto gm = std::get_if<Csrg>(&am);
		if (!gm)
			throw UsageError("gadget csrg needs a stochastic game");
		g = csrg_to_pmdp(*gm);
	} else
		throw UsageError("unknown gadget '" + o.name + "'");

	std::string path = output_path(c.cfg, o.output, o.name);
	write_file(path, model_to_text(g.model));
	Report r;
	r.add("gadget", o.name);
	describe_gadget(r, g);
	r.add("output", path);
	r.print(c.out, c.cfg.format);
	return kOk;
}

struct ReduceOpts {
	std::string kind, input, output, t1 = "T1", t2 = "T2", lambda1, lambda2, rel = "<";
	bool robust = false;
};

int cmd_reduce(Ctx &c, const ReduceOpts &o)
{
	GadgetOutput g;
	Report r;
	r.add("reduction", o.kind + (o.robust ? " (robust)" : ""));
	if (o.kind == "sat") {
		Cnf phi = parse_dimacs(read_file(o.input));
		r.add("formula", phi.str());
		if (o.robust) {
			try {
				g = sat_to_robust_pmdp(phi);
			} catch (const TrivialSat &e) {
				r.add("trivial", e.what());
				r.print(c.out, c.cfg.format);
				return kOk;
			}
		} else {
			g = sat_to_pmc(phi);
		}
	} else if (o.kind == "ineq") {
		ConstraintSystem cs;
		cs.polys = parse_poly_lines(read_file(o.input));
		cs.relation = ConstraintSystem::LtZero;
		g = ineqs_to_pmdp(cs);
	} else if (o.kind == "csrg") {
		g = csrg_to_pmdp(load_csrg(o.input));
	} else if (o.kind == "2obj") {
		if (o.lambda1.empty() || o.lambda2.empty())
			throw UsageError("reduce 2obj needs --lambda1 and --lambda2");
		Pmdp m = need_pmdp(resolve_model(o.input));
		m.validate();
		g = two_objective_to_forall(m, o.t1, o.t2, parse_rational(o.lambda1), parse_rational(o.lambda2),
		                            parse_rel(o.rel));
	} else {
		throw UsageError("unknown reduction '" + o.kind + "', expected sat, ineq, csrg or 2obj");
	}
	std::string path = output_path(c.cfg, o.output, "reduce-" + o.kind);
	write_file(path, model_to_text(g.model));
	describe_gadget(r, g);
	r.add("output", path);
	r.print(c.out, c.cfg.format);
	return kOk;
}

struct EncodeOpts {
	std::string model, spec, target = "T", output;
	bool solve = false;
};

int cmd_encode(Ctx &c, const EncodeOpts &o)
{
	Pmdp m = need_pmdp(resolve_model(o.model));
	m.validate();
	EncodeSpec spec;
	try {
		spec = EncodeSpec::parse(o.spec);
	} catch (const std::invalid_argument &e) {
		throw UsageError(e.what());
	}
	EtrFormula f = encode(m, target_of(m, o.target), spec);
	std::string text = emit_smtlib(f);
	if (!o.output.empty())
		write_file(o.output, text);
	else if (!o.solve) {
		c.out << text;
		return kOk;
	}
	Report r;
	r.add("spec", spec.str());
	r.add("extrapolated", spec.extrapolated());
	r.add("reals", f.reals.size());
	r.add("bools", f.bools.size());
	r.add("size", f.size());
	if (!o.output.empty())
		r.add("output", o.output);
	int code = kOk;
	if (o.solve) {
		SolveResult res = solve_external(f, c.cfg.solver_config());
		r.add("solver", to_string(res.status));
		if (!res.message.empty())
			r.add("solver_message", res.message);
		if (res.status == SolveStatus::Sat) {
			std::vector<std::string> params;
			for (const auto &x : m.params)
				if (res.model.reals.count(x))
					params.push_back(x + "=" + to_string(res.model.reals.at(x)));
			r.add("model_params", params);
		} else if (res.status == SolveStatus::Unsat) {
			code = kVerdictNo;
		} else {
			code = kSolverUnavailable;
		}
	}
	r.print(c.out, c.cfg.format);
	if (code == kSolverUnavailable)
		c.err << "psyn: error[E400]: solver " << (c.cfg.solver.empty() ? "not configured" : "gave no answer")
		      << " (set PSYN_SMT_SOLVER or --solver)\n";
	return code;
}

struct OracleOpts {
	std::string model, problem, target = "T", space = "wd", mandatory;
	unsigned resolution = 0;
	bool robust = false;
};

int cmd_oracle(Ctx &c, const OracleOpts &o)
{
	AnyModel am = resolve_model(o.model);
	unsigned res = o.resolution ? o.resolution : c.cfg.resolution;
	if (auto g = std::get_if<Csrg>(&am)) {
		CsrgBounds b = csrg_value_bounds(*g, res);
		Report r;
		r.add("model", o.model);
		r.add("lower", to_string(b.lower));
		r.add("upper", to_string(b.upper));
		r.add("strategy_resolution", res);
		r.print(c.out, c.cfg.format);
		return kOk;
	}
	if (o.problem.empty())
		throw UsageError("oracle needs --problem for a pMDP");
	Pmdp m = std::get<Pmdp>(am);
	Problem p;
	try {
		p = parse_problem(o.problem);
	} catch (const std::invalid_argument &e) {
		throw UsageError(e.what());
	}
	Grid grid = Grid::make(m, parse_space(o.space), res, parse_rationals(o.mandatory));
	OracleConfig oc;
	oc.enum_cap = c.cfg.enum_cap;
	Verdict v = o.robust ? decide_rob_reach(m, target_of(m, o.target), p, grid, oc)
	                     : decide_reach(m, target_of(m, o.target), p, grid, oc);
	if (c.cfg.format == Config::Structured) {
		Report r;
		std::istringstream lines(v.report());
		std::string line;
		while (std::getline(lines, line)) {
			auto colon = line.find(": ");
			r.add(line.substr(0, colon), line.substr(colon + 2));
		}
		r.print(c.out, c.cfg.format);
	} else {
		c.out << v.report();
	}
	return v.answer == Verdict::NoOnGrid ? kVerdictNo : kOk;
}

int cmd_verify(Ctx &c, const std::vector<std::string> &names, bool list)
{
	const auto &all = suites();
	if (list) {
		for (const auto &s : all)
			c.out << s.name << ": " << s.summary << "\n";
		return kOk;
	}
	std::vector<const Suite *> pick;
	for (const auto &n : names) {
		auto it = std::find_if(all.begin(), all.end(), [&](const Suite &s) { return s.name == n; });
		if (it == all.end())
			throw UsageError("unknown suite '" + n + "' (try verify --list)");
		pick.push_back(&*it);
	}
	if (pick.empty())
		for (const auto &s : all)
			pick.push_back(&s);
	bool ok = true;
	ojson results = ojson::array();
	for (const Suite *s : pick) {
		SuiteResult res;
		try {
			res = s->run();
		} catch (const std::exception &e) {
			res = {s->name, false, std::string("exception: ") + e.what()};
		}
		ok = ok && res.passed;
		if (c.cfg.format == Config::Structured)
			results.push_back({{"suite", res.name}, {"passed", res.passed}, {"detail", res.detail}});
		else
			c.out << (res.passed ? "PASS " : "FAIL ") << res.name << ": " << res.detail << "\n";
	}
	if (c.cfg.format == Config::Structured)
		c.out << ojson{{"suites", results}, {"passed", ok}}.dump(2) << "\n";
	return ok ? kOk : kVerdictNo;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
	CLI::App app{"parameter synthesis toolkit for parametric Markov models", "psyn"};
	app.require_subcommand(1);
	app.set_version_flag("--version", "psyn 0.1");

	std::string config_path;
	std::optional<std::string> f_solver, f_out_dir, f_format;
	std::optional<double> f_timeout;
	std::optional<size_t> f_cap;
	std::optional<unsigned> f_res;
	app.add_option("--config", config_path, "JSON config file (also PSYN_CONFIG)");
	app.add_option("--solver", f_solver, "SMT solver command reading SMT-LIB on stdin");
	app.add_option("--timeout", f_timeout, "solver timeout in seconds");
	app.add_option("--enum-cap", f_cap, "scheduler enumeration cap");
	app.add_option("--resolution", f_res, "grid points per parameter");
	app.add_option("--out-dir", f_out_dir, "directory for generated models");
	app.add_option("--format", f_format, "report format: human or structured");

	std::string validate_model;
	auto *validate = app.add_subcommand("validate", "check a model file and summarise it");
	validate->add_option("model", validate_model, "model file or built-in name")->required();

	AnalyzeOpts ao;
	auto *analyze = app.add_subcommand("analyze", "values, solution functions and scheduler checks");
	analyze->add_option("model", ao.model, "model file or built-in name")->required();
	analyze->add_option("--target,-t", ao.target, "target set name");
	analyze->add_option("--scheduler,-s", ao.scheduler, "memoryless scheduler, e.g. s0:a,s1:b");
	analyze->add_flag("--sol", ao.sol, "print the solution function at the initial state");
	analyze->add_option("--at", ao.at, "instantiation, e.g. x=1/2,y=1/4");
	analyze->add_option("--check-optimal", ao.check, "check the scheduler is min or max optimal");
	analyze->add_option("--where", ao.where, "somewhere or everywhere (default)");
	analyze->add_option("--space", ao.space, "wd, gp (default) or eps:<e>");

	GadgetOpts go;
	auto *gadget = app.add_subcommand("gadget", "run one model construction");
	gadget->add_option("name", go.name, "one of threshold, normalize, gp, poly, adequate, simple, binary, "
	                                    "binary-pmc, moss, csrg")
	    ->required();
	gadget->add_option("model", go.model, "input model");
	gadget->add_option("--target,-t", go.target, "target set name");
	gadget->add_option("--lambda", go.lambda, "threshold");
	gadget->add_option("--mu", go.mu, "polynomial threshold");
	gadget->add_option("--poly", go.poly, "polynomial");
	gadget->add_option("--n", go.n, "family size");
	gadget->add_option("--output,-o", go.output, "output model file");

	ReduceOpts ro;
	auto *reduce = app.add_subcommand("reduce", "build the pMDP of a hardness reduction");
	reduce->add_option("kind", ro.kind, "sat, ineq, csrg or 2obj")->required();
	reduce->add_option("input", ro.input, "DIMACS file, polynomial list, game or pMC")->required();
	reduce->add_flag("--robust", ro.robust, "sat: build the robust pMDP instead of the pMC");
	reduce->add_option("--t1", ro.t1, "2obj: first target set");
	reduce->add_option("--t2", ro.t2, "2obj: second target set");
	reduce->add_option("--lambda1", ro.lambda1, "2obj: threshold for the first target");
	reduce->add_option("--lambda2", ro.lambda2, "2obj: threshold for the second target");
	reduce->add_option("--rel", ro.rel, "2obj: comparison");
	reduce->add_option("--output,-o", ro.output, "output model file");

	EncodeOpts eo;
	auto *enc = app.add_subcommand("encode", "emit an ETR encoding as SMT-LIB");
	enc->add_option("model", eo.model, "simple pMDP")->required();
	enc->add_option("--spec", eo.spec, "inner quantifier, bound, space, e.g. forall,<,gp")->required();
	enc->add_option("--target,-t", eo.target, "target set name");
	enc->add_option("--output,-o", eo.output, "write SMT-LIB here instead of stdout");
	enc->add_flag("--solve", eo.solve, "run the configured solver");

	OracleOpts oo;
	auto *oracle = app.add_subcommand("oracle", "grid and enumeration ground truth");
	oracle->add_option("model", oo.model, "pMDP or stochastic game")->required();
	oracle->add_option("--problem,-p", oo.problem, "Q1,Q2,REL,LAMBDA, e.g. exists,forall,>=,1/2");
	oracle->add_option("--target,-t", oo.target, "target set name");
	oracle->add_option("--space", oo.space, "wd (default), gp or eps:<e>");
	oracle->add_option("--resolution", oo.resolution, "grid points per parameter");
	oracle->add_option("--mandatory", oo.mandatory, "extra grid values, comma separated");
	oracle->add_flag("--robust", oo.robust, "outer quantifier over schedulers, inner over parameters");

	std::vector<std::string> suite_names;
	bool list = false;
	auto *verify = app.add_subcommand("verify", "re-run the worked examples");
	verify->add_option("suite", suite_names, "suites to run (default: all)");
	verify->add_flag("--list", list, "list the suites");

	try {
		std::vector<std::string> rev(args.rbegin(), args.rend());
		app.parse(rev);
	} catch (const CLI::ParseError &e) {
		if (e.get_exit_code() == 0)
			return app.exit(e, out, err);
		err << "psyn: error[E100]: " << e.what() << "\nRun with --help for more information.\n";
		return kUsage;
	}

	Ctx ctx{{}, out, err};
	try {
		if (config_path.empty())
			if (const char *p = std::getenv("PSYN_CONFIG"); p && *p)
				config_path = p;
		if (!config_path.empty())
			ctx.cfg.apply_file(config_path);
		ctx.cfg.apply_env();
		if (f_solver)
			ctx.cfg.solver = *f_solver;
		if (f_timeout)
			ctx.cfg.timeout_s = *f_timeout;
		if (f_cap)
			ctx.cfg.enum_cap = *f_cap;
		if (f_res)
			ctx.cfg.resolution = *f_res;
		if (f_out_dir)
			ctx.cfg.out_dir = *f_out_dir;
		if (f_format)
			ctx.cfg.format = parse_format(*f_format, "--format");
		ctx.cfg.check();
	} catch (const std::exception &e) {
		err << "psyn: error[E100]: " << e.what() << "\n";
		return kUsage;
	}

	try {
		if (*validate)
			return cmd_validate(ctx, validate_model);
		if (*analyze)
			return cmd_analyze(ctx, ao);
		if (*gadget)
			return cmd_gadget(ctx, go);
		if (*reduce)
			return cmd_reduce(ctx, ro);
		if (*enc)
			return cmd_encode(ctx, eo);
		if (*oracle)
			return cmd_oracle(ctx, oo);
		if (*verify)
			return cmd_verify(ctx, suite_names, list);
	} catch (const UsageError &e) {
		err << "psyn: error[E100]: " << e.what() << "\n";
		return kUsage;
	} catch (const ParseError &e) {
		err << "psyn: error[E201]: " << e.what() << "\n";
		return kModelError;
	} catch (const ModelError &e) {
		err << "psyn: error[E200]: " << e.what() << "\n";
		return kModelError;
	} catch (const GadgetError &e) {
		err << "psyn: error[E210]: " << e.what() << "\n";
		return kModelError;
	} catch (const EncodeError &e) {
		err << "psyn: error[E211]: " << e.what() << "\n";
		return kModelError;
	} catch (const OracleError &e) {
		err << "psyn: error[E220]: " << e.what() << "\n";
		return kModelError;
	} catch (const std::invalid_argument &e) {
		err << "psyn: error[E100]: " << e.what() << "\n";
		return kUsage;
	} catch (const std::exception &e) {
		err << "psyn: error[E500]: " << e.what() << "\n";
		return kModelError;
	}
	return kUsage;
}

} // namespace psyn::cli
