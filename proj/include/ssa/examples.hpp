/* examples.hpp -- built-in example automata
 *
 * A small registry of named automata used by the CLI (--example) and the test
 * suite.  Each entry carries the generating automaton and, when the group is
 * known to contract to a finite nucleus, an automaton on that nucleus.
 */

#ifndef SSA_EXAMPLES_HPP
#define SSA_EXAMPLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "ssa/automaton.hpp"

namespace ssa {

struct ExampleEntry {
    std::string name;
    std::string description;
    Automaton generating;
    std::optional<Automaton> nucleus;  // nuclear form of the same group, when finite
};

// All entries, in registry order.
const std::vector<ExampleEntry>& examples();

// Lookup by name; throws domain_error("unknown_example") if absent.
const ExampleEntry& find_example(const std::string& name);

}  // namespace ssa

#endif
