#pragma once

#include "psyn/model.hpp"

#include <variant>

namespace psyn {

// Model files are JSON documents:
//
//   { "type": "pmdp",
//     "states": ["s0", "s1", "T"],
//     "parameters": ["p"],               -- optional, inferred from labels
//     "initial": "s0",
//     "transitions": [ {"from": "s0", "action": "a", "to": "T", "label": "p"}, ... ],
//     "targets": { "T": ["T"] },
//     "metadata": { "key": "value" } }
//
//   { "type": "csrg",
//     "states": [...], "initial": "s0", "targets": ["t"],
//     "actions1": { "s0": ["a", "b"] }, "actions2": { "s0": ["c"] },
//     "kernel": [ {"state": "s0", "a": "a", "b": "c", "dist": {"t": "1/2", "s0": "1/2"}} ] }
//
// "action" defaults to "tau". Labels and probabilities are strings so
// rationals stay exact. Names starting with '$' are reserved for generated
// models and rejected unless metadata.generated_by is present.

struct SchemaError : ModelError {
	std::string where;
	SchemaError(const std::string &where, const std::string &msg)
		: ModelError(where + ": " + msg), where(where) {}
};

using AnyModel = std::variant<Pmdp, Csrg>;

AnyModel model_from_text(const std::string &text);
std::string model_to_text(const Pmdp &m);
std::string model_to_text(const Csrg &g);

AnyModel load_model(const std::string &path);
Pmdp load_pmdp(const std::string &path);
Csrg load_csrg(const std::string &path);
void save_model(const Pmdp &m, const std::string &path);
void save_model(const Csrg &g, const std::string &path);

// "s0:a,s1:b"
Scheduler parse_scheduler(const std::string &text);
// "x=1/2,y=0.25"
Instantiation parse_instantiation(const std::string &text);

} // namespace psyn
