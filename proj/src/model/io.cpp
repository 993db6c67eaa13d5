#include "psyn/io.hpp"
#include "psyn/parse.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace psyn {

using nlohmann::json;

namespace {

const json &field(const json &j, const char *key, const std::string &where)
{
	if (!j.is_object())
		throw SchemaError(where, "expected an object");
	auto it = j.find(key);
	if (it == j.end())
		throw SchemaError(where, std::string("missing key '") + key + "'");
	return *it;
}

std::string str_at(const json &j, const std::string &where)
{
	if (!j.is_string())
		throw SchemaError(where, "expected a string");
	return j.get<std::string>();
}

std::vector<std::string> str_list(const json &j, const std::string &where)
{
	if (!j.is_array())
		throw SchemaError(where, "expected an array of strings");
	std::vector<std::string> r;
	for (size_t i = 0; i < j.size(); i++)
		r.push_back(str_at(j[i], where + "/" + std::to_string(i)));
	return r;
}

Rational rational_at(const json &j, const std::string &where)
{
	std::string s;
	if (j.is_string())
		s = j.get<std::string>();
	else if (j.is_number_integer())
		s = std::to_string(j.get<long long>());
	else
		throw SchemaError(where, "expected a rational as a string");
	try {
		return parse_rational(s);
	} catch (const ParseError &e) {
		throw SchemaError(where, e.what());
	}
}

struct NameCheck {
	bool allow_reserved;
	void operator()(const std::string &name, const std::string &where) const
	{
		if (name.empty())
			throw SchemaError(where, "empty name");
		if (!allow_reserved && name[0] == '$')
			throw SchemaError(where, "name '" + name + "' uses the reserved '$' prefix");
	}
};

Pmdp pmdp_from_json(const json &j)
{
	Pmdp m;
	bool generated = j.contains("metadata") && j["metadata"].is_object() && j["metadata"].contains("generated_by");
	NameCheck check{generated};
	auto states = str_list(field(j, "states", ""), "/states");
	std::set<std::string> known;
	for (size_t i = 0; i < states.size(); i++) {
		check(states[i], "/states/" + std::to_string(i));
		if (!known.insert(states[i]).second)
			throw SchemaError("/states/" + std::to_string(i), "duplicate state '" + states[i] + "'");
	}
	m.states = states;
	if (j.contains("parameters")) {
		auto ps = str_list(j["parameters"], "/parameters");
		for (size_t i = 0; i < ps.size(); i++) {
			std::string w = "/parameters/" + std::to_string(i);
			check(ps[i], w);
			if (!is_identifier(ps[i]))
				throw SchemaError(w, "'" + ps[i] + "' is not an identifier");
			m.add_param(ps[i]);
		}
	}
	m.initial = str_at(field(j, "initial", ""), "/initial");
	if (!known.count(m.initial))
		throw SchemaError("/initial", "unknown state '" + m.initial + "'");
	const json &tr = field(j, "transitions", "");
	if (!tr.is_array())
		throw SchemaError("/transitions", "expected an array");
	for (size_t i = 0; i < tr.size(); i++) {
		std::string w = "/transitions/" + std::to_string(i);
		std::string from = str_at(field(tr[i], "from", w), w + "/from");
		std::string to = str_at(field(tr[i], "to", w), w + "/to");
		std::string act = tr[i].contains("action") ? str_at(tr[i]["action"], w + "/action") : kDefaultAction;
		if (!known.count(from))
			throw SchemaError(w + "/from", "unknown state '" + from + "'");
		if (!known.count(to))
			throw SchemaError(w + "/to", "unknown state '" + to + "'");
		check(act, w + "/action");
		const json &lj = field(tr[i], "label", w);
		Polynomial p;
		try {
			p = lj.is_number_integer() ? Polynomial(Rational(lj.get<long>())) : parse_poly(str_at(lj, w + "/label"));
		} catch (const ParseError &e) {
			throw SchemaError(w + "/label", e.what());
		}
		for (const auto &x : p.variables())
			check(x, w + "/label");
		m.add_edge(from, act, to, p);
	}
	if (j.contains("targets")) {
		const json &ts = j["targets"];
		if (!ts.is_object())
			throw SchemaError("/targets", "expected an object of named state lists");
		for (auto it = ts.begin(); it != ts.end(); ++it) {
			std::string w = "/targets/" + it.key();
			m.targets[it.key()];
			for (const auto &s : str_list(it.value(), w)) {
				if (!known.count(s))
					throw SchemaError(w, "unknown state '" + s + "'");
				m.targets[it.key()].insert(s);
			}
		}
	}
	if (j.contains("metadata")) {
		const json &md = j["metadata"];
		if (!md.is_object())
			throw SchemaError("/metadata", "expected an object");
		for (auto it = md.begin(); it != md.end(); ++it)
			m.metadata[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
	}
	try {
		m.validate();
	} catch (const ModelError &e) {
		throw SchemaError("/", e.what());
	}
	return m;
}

Csrg csrg_from_json(const json &j)
{
	Csrg g;
	g.states = str_list(field(j, "states", ""), "/states");
	std::set<std::string> known(g.states.begin(), g.states.end());
	g.initial = str_at(field(j, "initial", ""), "/initial");
	if (!known.count(g.initial))
		throw SchemaError("/initial", "unknown state '" + g.initial + "'");
	if (j.contains("targets"))
		for (const auto &t : str_list(j["targets"], "/targets")) {
			if (!known.count(t))
				throw SchemaError("/targets", "unknown state '" + t + "'");
			g.targets.insert(t);
		}
	for (const char *k : {"actions1", "actions2"}) {
		const json &a = field(j, k, "");
		if (!a.is_object())
			throw SchemaError(std::string("/") + k, "expected an object");
		auto &dst = k[7] == '1' ? g.acts1 : g.acts2;
		for (auto it = a.begin(); it != a.end(); ++it) {
			if (!known.count(it.key()))
				throw SchemaError(std::string("/") + k + "/" + it.key(), "unknown state");
			dst[it.key()] = str_list(it.value(), std::string("/") + k + "/" + it.key());
		}
	}
	const json &ker = field(j, "kernel", "");
	if (!ker.is_array())
		throw SchemaError("/kernel", "expected an array");
	for (size_t i = 0; i < ker.size(); i++) {
		std::string w = "/kernel/" + std::to_string(i);
		std::string s = str_at(field(ker[i], "state", w), w + "/state");
		std::string a = str_at(field(ker[i], "a", w), w + "/a");
		std::string b = str_at(field(ker[i], "b", w), w + "/b");
		const json &d = field(ker[i], "dist", w);
		if (!d.is_object())
			throw SchemaError(w + "/dist", "expected an object");
		auto &row = g.kernel[{s, a, b}];
		for (auto it = d.begin(); it != d.end(); ++it) {
			if (!known.count(it.key()))
				throw SchemaError(w + "/dist/" + it.key(), "unknown state");
			row[it.key()] = rational_at(it.value(), w + "/dist/" + it.key());
		}
	}
	try {
		g.validate();
	} catch (const ModelError &e) {
		throw SchemaError("/", e.what());
	}
	return g;
}

std::string read_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ModelError("cannot open '" + path + "'");
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
	std::ofstream out(path);
	if (!out)
		throw ModelError("cannot write '" + path + "'");
	out << text;
}

} // namespace

AnyModel model_from_text(const std::string &text)
{
	json j;
	try {
		j = json::parse(text);
	} catch (const json::parse_error &e) {
		throw SchemaError("byte " + std::to_string(e.byte), "malformed JSON");
	}
	std::string type = j.is_object() && j.contains("type") ? str_at(j["type"], "/type") : "pmdp";
	if (type == "pmdp" || type == "pmc")
		return pmdp_from_json(j);
	if (type == "csrg")
		return csrg_from_json(j);
	throw SchemaError("/type", "unknown model type '" + type + "'");
}

std::string model_to_text(const Pmdp &m)
{
	json j;
	j["type"] = "pmdp";
	j["states"] = m.states;
	j["parameters"] = m.params;
	j["initial"] = m.initial;
	json tr = json::array();
	for (const auto &s : m.states) {
		auto it = m.trans.find(s);
		if (it == m.trans.end())
			continue;
		for (const auto &[a, row] : it->second)
			for (const auto &[t, p] : row)
				tr.push_back({{"from", s}, {"action", a}, {"to", t}, {"label", p.str()}});
	}
	j["transitions"] = tr;
	json ts = json::object();
	for (const auto &[name, set] : m.targets)
		ts[name] = std::vector<std::string>(set.begin(), set.end());
	j["targets"] = ts;
	if (!m.metadata.empty())
		j["metadata"] = m.metadata;
	return j.dump(2) + "\n";
}

std::string model_to_text(const Csrg &g)
{
	json j;
	j["type"] = "csrg";
	j["states"] = g.states;
	j["initial"] = g.initial;
	j["targets"] = std::vector<std::string>(g.targets.begin(), g.targets.end());
	j["actions1"] = g.acts1;
	j["actions2"] = g.acts2;
	json ker = json::array();
	for (const auto &[key, dist] : g.kernel) {
		json d = json::object();
		for (const auto &[t, p] : dist)
			d[t] = to_string(p);
		ker.push_back({{"state", std::get<0>(key)}, {"a", std::get<1>(key)}, {"b", std::get<2>(key)}, {"dist", d}});
	}
	j["kernel"] = ker;
	return j.dump(2) + "\n";
}

AnyModel load_model(const std::string &path)
{
	try {
		return model_from_text(read_file(path));
	} catch (const SchemaError &e) {
		throw SchemaError(path + ":" + e.where, std::string(e.what()).substr(e.where.size() + 2));
	}
}

Pmdp load_pmdp(const std::string &path)
{
	AnyModel m = load_model(path);
	if (auto *p = std::get_if<Pmdp>(&m))
		return std::move(*p);
	throw ModelError("'" + path + "' holds a game, expected a pMC/pMDP");
}

Csrg load_csrg(const std::string &path)
{
	AnyModel m = load_model(path);
	if (auto *g = std::get_if<Csrg>(&m))
		return std::move(*g);
	throw ModelError("'" + path + "' holds a pMDP, expected a game");
}

void save_model(const Pmdp &m, const std::string &path) { write_file(path, model_to_text(m)); }
void save_model(const Csrg &g, const std::string &path) { write_file(path, model_to_text(g)); }

namespace {

std::vector<std::pair<std::string, std::string>> split_pairs(const std::string &text, char sep)
{
	std::vector<std::pair<std::string, std::string>> r;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ',')) {
		auto trim = [](std::string s) {
			size_t b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
			return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
		};
		item = trim(item);
		if (item.empty())
			continue;
		size_t k = item.find(sep);
		if (k == std::string::npos)
			throw ParseError(0, "expected '" + std::string(1, sep) + "' in '" + item + "'");
		r.emplace_back(trim(item.substr(0, k)), trim(item.substr(k + 1)));
	}
	return r;
}

} // namespace

Scheduler parse_scheduler(const std::string &text)
{
	Scheduler s;
	for (auto &[st, a] : split_pairs(text, ':'))
		s.choice[st] = a;
	return s;
}

Instantiation parse_instantiation(const std::string &text)
{
	Instantiation u;
	for (auto &[x, v] : split_pairs(text, '='))
		u[x] = parse_rational(v);
	return u;
}

std::string to_string(const Instantiation &u)
{
	std::string r;
	for (const auto &[x, v] : u) {
		if (!r.empty())
			r += ",";
		r += x + "=" + to_string(v);
	}
	return r;
}

} // namespace psyn
