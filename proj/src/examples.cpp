/* examples.cpp -- the built-in example registry
 *
 * Wreath rows follow the convention of from_wreath: one row per state with
 * its restriction per letter and its root permutation images.  The ternary
 * entries share the alphabet rotation r = (0 1 2); their states are the
 * powers of a single tree automorphism and the identity.
 */

#include "ssa/examples.hpp"

#include <utility>

namespace ssa {
namespace {

ExampleEntry make_lamplighter() {
    Automaton g = from_wreath(2, {
                                     {"a", {"a", "b"}, {0, 1}},
                                     {"b", {"b", "a"}, {1, 0}},
                                 });
    return {"lamplighter",
            "lamplighter group: state a copies and state b flips the current letter, and "
            "reading a 1 exchanges the two states",
            std::move(g), std::nullopt};
}

ExampleEntry make_bs13() {
    Automaton g = from_wreath(2, {
                                     {"a", {"a", "b"}, {0, 1}},
                                     {"b", {"a", "c"}, {1, 0}},
                                     {"c", {"b", "c"}, {0, 1}},
                                 });
    return {"bs13",
            "the soluble Baumslag-Solitar group BS(1,3): states act as X -> 3X, 3X+1, 3X+2 on "
            "binary integers read least significant digit first",
            std::move(g), std::nullopt};
}

ExampleEntry make_odometer() {
    Automaton g = from_wreath(2, {
                                     {"τ", {"ε", "τ"}, {1, 0}},
                                 });
    Automaton n = from_wreath(2, {
                                     {"ε", {"ε", "ε"}, {0, 1}},
                                     {"τ", {"ε", "τ"}, {1, 0}},
                                     {"τ^-1", {"τ^-1", "ε"}, {1, 0}},
                                 });
    return {"odometer", "binary adding machine: τ adds one to a binary integer read least "
                        "significant digit first",
            std::move(g), std::move(n)};
}

// Shared rows for the three ternary one-generator examples: τ and its inverse
// and square act on the ternary tree; the identity row comes first in the
// nuclear form and is adjoined automatically in the generating form.
ExampleEntry make_ternary(std::string name, std::string description,
                          std::vector<WreathRow> rows) {
    Automaton g = from_wreath(3, rows);
    std::vector<WreathRow> with_identity;
    with_identity.push_back({"ε", {"ε", "ε", "ε"}, {0, 1, 2}});
    with_identity.insert(with_identity.end(), rows.begin(), rows.end());
    Automaton n = from_wreath(3, with_identity);
    return {std::move(name), std::move(description), std::move(g), std::move(n)};
}

ExampleEntry make_nonrecurrent3() {
    return make_ternary(
        "nonrecurrent3",
        "powers of a ternary adding machine variant; the level-one stabilizer restricts onto "
        "a proper subgroup, so the recurrence search cannot recover the generators",
        {
            {"τ", {"ε", "τ", "τ"}, {1, 2, 0}},
            {"τ^-1", {"τ^-1", "ε", "τ^-1"}, {2, 0, 1}},
            {"τ^2", {"τ", "τ^2", "τ"}, {2, 0, 1}},
            {"τ^-2", {"τ^-2", "τ^-1", "τ^-1"}, {1, 2, 0}},
        });
}

ExampleEntry make_nonsmooth3() {
    return make_ternary(
        "nonsmooth3",
        "a ternary automorphism whose square generates a smooth automaton while the "
        "minimal generating set {τ, τ^-1} does not",
        {
            {"τ", {"τ", "τ^-1", "τ"}, {1, 2, 0}},
            {"τ^-1", {"τ^-1", "τ^-1", "τ"}, {2, 0, 1}},
            {"τ^2", {"ε", "ε", "τ^2"}, {2, 0, 1}},
            {"τ^-2", {"ε", "τ^-2", "ε"}, {1, 2, 0}},
        });
}

ExampleEntry make_nonsmooth3b() {
    return make_ternary(
        "nonsmooth3b",
        "a ternary automorphism whose trivially-restricting moves never leave letters 1 and 2, "
        "so no generating set on these states is smooth",
        {
            {"τ", {"τ^2", "ε", "τ^-1"}, {1, 2, 0}},
            {"τ^-1", {"τ", "τ^-2", "ε"}, {2, 0, 1}},
            {"τ^2", {"τ^2", "τ^-1", "τ"}, {2, 0, 1}},
            {"τ^-2", {"τ", "τ^-1", "τ^-2"}, {1, 2, 0}},
        });
}

ExampleEntry make_basilica() {
    Automaton g = from_wreath(2, {
                                     {"a", {"ε", "b"}, {1, 0}},
                                     {"b", {"ε", "a"}, {0, 1}},
                                 });
    Automaton n = from_wreath(2, {
                                     {"ε", {"ε", "ε"}, {0, 1}},
                                     {"a", {"ε", "b"}, {1, 0}},
                                     {"a^-1", {"b^-1", "ε"}, {1, 0}},
                                     {"b", {"ε", "a"}, {0, 1}},
                                     {"b^-1", {"ε", "a^-1"}, {0, 1}},
                                     {"a^-1·b", {"b^-1·a", "ε"}, {1, 0}},
                                     {"b^-1·a", {"ε", "a^-1·b"}, {1, 0}},
                                 });
    return {"basilica",
            "the basilica group on the binary tree; the nucleus adds the inverses and the two "
            "mixed products a^-1·b and b^-1·a",
            std::move(g), std::move(n)};
}

}  // namespace

const std::vector<ExampleEntry>& examples() {
    static const std::vector<ExampleEntry> table = [] {
        std::vector<ExampleEntry> t;
        t.push_back(make_lamplighter());
        t.push_back(make_bs13());
        t.push_back(make_odometer());
        t.push_back(make_nonrecurrent3());
        t.push_back(make_nonsmooth3());
        t.push_back(make_nonsmooth3b());
        t.push_back(make_basilica());
        return t;
    }();
    return table;
}

const ExampleEntry& find_example(const std::string& name) {
    for (const ExampleEntry& e : examples())
        if (e.name == name) return e;
    throw domain_error("unknown_example", "no example named '" + name + "'");
}

}  // namespace ssa
