/* analysis.hpp -- decision procedures on automaton groups
 *
 * Nucleus / contraction status, nuclearity, smoothness and expansion rules,
 * the open set condition, recurrence, spherical transitivity, restriction
 * depth, and the orders of the finite level quotients.  Every procedure is
 * either exact or explicitly bounded: bounded searches report Unknown or
 * ExceededBound, never a guessed negative.
 */

#ifndef SSA_ANALYSIS_HPP
#define SSA_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ssa/automaton.hpp"
#include "ssa/biguint.hpp"
#include "ssa/group_word.hpp"

namespace ssa {

struct AnalysisCaps {
    std::size_t max_elements = 512;  // nucleus candidate cap
    std::size_t max_len = 12;        // raw length cap for closure products
    std::size_t search_len = 8;      // recurrence product search depth
    std::size_t level_cap = 100000;  // largest |A|^n handled per level
};

struct NucleusReport {
    enum class Status { Contracting, ExceededBound };
    Status status = Status::ExceededBound;
    // Canonical representatives, identity first, then by (length, factors).
    std::vector<RawWord> nucleus;
    std::optional<Automaton> nuclear_automaton;  // states renamed to element texts
    std::string witness;  // ExceededBound: best-effort description of the runaway family
    std::size_t max_elements = 0;
    std::size_t max_len = 0;
};

/* Fixed-point closure of limit sets: starting from the identity and the signed
 * states, repeatedly add every element recurring arbitrarily deep in the
 * restriction graph of any pair product.  Stable set = the nucleus; tripping a
 * cap yields ExceededBound. */
NucleusReport nucleus(const Automaton& a, std::size_t max_elements = 512,
                      std::size_t max_len = 12);

struct ContractionReport {
    enum class Value { Yes, Unknown };  // a definitive "No" is never asserted
    Value value = Value::Unknown;
    NucleusReport detail;
};

ContractionReport is_contracting(const Automaton& a, std::size_t max_elements = 512,
                                 std::size_t max_len = 12);

// True iff every state appears somewhere in the transition table.
bool check_tau_onto(const Automaton& a);

/* True iff the states, taken as tree transformations after minimization, are
 * exactly their own nucleus: identity present, inverse-closed, and every pair
 * product's limit set lands back in the state set. */
bool is_nuclear(const Automaton& a);

/* True iff tau is onto and the letter graph with an edge a -> sigma(a,q) for
 * every q whose restriction tau(a,q) is the identity element is strongly
 * connected.  A missing identity state is adjoined first. */
bool is_smooth(const Automaton& a);

struct ExpansionRule {
    bool present = false;
    // For each state q: a letter/state pair with tau(letter, state) = q.
    std::vector<std::size_t> entry_letter;  // e_q
    std::vector<std::size_t> entry_state;   // v_q
    // connector[a][b] = state word moving a to b with every restriction trivial.
    std::vector<std::vector<std::vector<std::size_t>>> connector;
};

// Present exactly when is_smooth holds; connectors are shortest paths in the
// identity-restriction letter graph (deterministic BFS).
ExpansionRule expansion_rule(const Automaton& a);

// True iff from every state some identity-element state is reachable in the
// transition graph.
bool open_set_condition(const Automaton& a);

struct RecurrenceLetter {
    std::size_t letter = 0;
    std::vector<std::size_t> orbit;  // level-1 orbit, BFS discovery order
    std::vector<RawWord> schreier_generators;
    std::vector<RawWord> restricted;  // the generators' restrictions at `letter`
    // Per automaton generator: a product of restricted generators equal to it,
    // if one was found within the search bound.
    std::vector<std::optional<RawWord>> witness;
};

struct RecurrenceReport {
    enum class Status { Verified, Unknown };
    Status status = Status::Unknown;
    std::size_t search_len = 0;
    std::vector<RecurrenceLetter> per_letter;
};

/* For every letter: Schreier generators of its level-1 stabilizer (BFS
 * transversal, generator-order tie break), restricted at the letter; each
 * automaton generator is then searched among bounded products of the
 * restricted generators and their inverses. */
RecurrenceReport recurrence(const Automaton& a, std::size_t search_len = 8);

// One bool per level 1..max_level: does the generator action have a single
// orbit on words of that length?
std::vector<bool> spherical_transitivity(const Automaton& a, std::size_t max_level,
                                         std::size_t level_cap = 100000);

struct RestrictionDepth {
    bool bounded = false;
    std::size_t depth = 0;  // meaningful when bounded; otherwise the cap used
};

/* Smallest d such that every length-d restriction of g lies in `nucleus`
 * (elementwise via equals).  Monotone because the nucleus is
 * restriction-closed, so the search tracks only the non-nucleus frontier. */
RestrictionDepth restriction_depth(const GroupOps& ops, const RawWord& g,
                                   const std::vector<RawWord>& nucleus,
                                   std::size_t depth_cap = 32);

/* Order of the permutation group induced on words of length n, via a
 * deterministic stabilizer chain (bases are the smallest moved points,
 * points ordered lexicographically). */
BigUint level_quotient_order(const Automaton& a, std::size_t n,
                             std::size_t level_cap = 100000);

// Indices of the generator states (every state except the designated identity).
std::vector<std::size_t> generator_states(const Automaton& a);

// Adds a fresh identity state named "ε" when none is designated.
Automaton ensure_identity(const Automaton& a);

}  // namespace ssa

#endif
