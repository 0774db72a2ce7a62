/* serialize.hpp -- JSON and DOT encodings
 *
 * The automaton schema is stable and round-trips byte-for-byte:
 *   {"alphabet_size": k, "states": [names...], "identity": name|null,
 *    "sigma": [[int...]...], "tau": [[name...]...]}
 * with one row per letter and one column per state.  Reports produced by the
 * CLI share the envelope {"schema": "ssa-report/1", "command": ...}.
 */

#ifndef SSA_SERIALIZE_HPP
#define SSA_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "ssa/automaton.hpp"

namespace ssa {

nlohmann::json automaton_to_json(const Automaton& a);

// Parses and validates; throws domain_error("bad_json", ...) on shape errors
// and the validate() errors on semantic ones.
Automaton automaton_from_json(const nlohmann::json& j);

// One line per state listing letter -> output/next transitions.
std::string automaton_to_text(const Automaton& a);

nlohmann::json graph_to_json(const LabeledGraph& g);

std::string graph_to_dot(const LabeledGraph& g, const std::string& name);

/* DOT with one subgraph cluster per vertex class (classes index into
 * g.vertices); vertices outside every class are emitted at top level. */
std::string graph_to_dot_clustered(const LabeledGraph& g,
                                   const std::vector<std::vector<std::size_t>>& classes,
                                   const std::vector<std::string>& class_labels,
                                   const std::string& name);

// Report envelope: {"schema": "ssa-report/1", "command": command, ...body}.
nlohmann::json report_json(const std::string& command, nlohmann::json body);

}  // namespace ssa

#endif
