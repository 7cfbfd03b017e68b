#pragma once

#include <json.hpp>

#include "mdl/suites.hpp"

namespace mdl {

using nlohmann::json;

// Throws ParseError on unreadable files or malformed JSON.
json load_json_file(const std::string& path);

// Element keys look like "[a,b]"; the bottom element is "[]".  Labels may
// not contain ',', '[', ']' or '|', which the key syntax reserves.
std::string elem_key(const GroundSet& ground, Elem e);
Elem elem_from_key(const GroundSet& ground, const std::string& key);
std::string cover_key(const GroundSet& ground, const Cover& alpha);

// {"ground": ["a","b"], "elements": [[], ["a"], ["a","b"]]}
Lattice lattice_from_json(const json& j);
json lattice_to_json(const Lattice& lat);

// {"lattice": {...}, "m": {"[]": 0.0, ...},
//  "omega": "generated-topology" | "generated-subalgebra" |
//           {"table": {"<cover key>": [[...], ...], ...}}}
// Cover keys in a table are the member element keys joined by '|' in sorted
// element order.
MeasuredLattice measured_from_json(const json& j);

// {"dimension": 1, "generators": [{"perm": {"a": "b", "b": "a"}}],
//  "boolean": true}; omitted points stay fixed.  File actions always have
// dimension >= 1; the trivial group is spelled as one identity generator.
GroupAction action_from_json(const json& j, const GroundSet& ground);

// {"kind": "psp", "ground": [...], "mu": {"a": 0.5, ...},
//  "algebra": "powerset" | [[...], ...], "action": {...}}
// {"kind": "top", "ground": [...], "opens": [[...], ...], "action": {...}}
SystemVariant system_from_json(const json& j);

// {"pairs": [{"source": {...}, "target": {...}, "map": {"a": "q0", ...}}]}
std::vector<FactorPair> pairs_from_json(const json& j);

// {"kind": "bernoulli", "alphabet": ["0","1"], "weights": [0.5, 0.5]}
// {"kind": "markov", "alphabet": [...], "P": [[...], ...]}
// {"kind": "sft", "alphabet": [...], "forbidden": ["11", ...]}
ShiftSystem shift_from_json(const json& j);

// Header "n,box_size,h_w,ratio,certificate"; values scaled to the report base.
std::string table_to_csv(const ConvergenceTable& table);
json table_to_json(const ConvergenceTable& table);

json report_to_json(const SuiteReport& rep);
json counterexample_to_json(const CounterexampleReport& rep, LogBase base);

} // namespace mdl
