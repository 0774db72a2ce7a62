/* helpers.hpp -- shared fixtures and independent evaluators for the tests
 *
 * oracle_apply walks the transition table directly (inverses resolved by
 * searching the unique preimage letter), sharing no code with GroupOps; the
 * closed-form boundary oracles in the individual test files are independent
 * of the tables as well.
 */

#ifndef SSA_TEST_HELPERS_HPP
#define SSA_TEST_HELPERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ssa/automaton.hpp"
#include "ssa/examples.hpp"
#include "ssa/group_word.hpp"

namespace ssa::test {

inline WreathRow row(std::string name, std::vector<std::string> restrictions,
                     std::vector<std::size_t> images) {
    return WreathRow{std::move(name), std::move(restrictions), std::move(images)};
}

inline Automaton identity_automaton(std::size_t k) {
    Automaton a;
    a.alphabet_size = k;
    a.states = {"ε"};
    a.identity = 0;
    a.sigma.assign(k, {0});
    a.tau.assign(k, {0});
    for (std::size_t l = 0; l < k; ++l) a.sigma[l][0] = l;
    validate(a);
    return a;
}

// Three-state machine generating the same group as the nonsmooth3 example.
inline Automaton nonsmooth3_minimal() {
    return from_wreath(3, {row("τ", {"τ", "τ^-1", "τ"}, {1, 2, 0}),
                           row("τ^-1", {"τ^-1", "τ^-1", "τ"}, {2, 0, 1})});
}

// The index-two subgroup of the same group, generated by the square.
inline Automaton nonsmooth3_square() {
    return from_wreath(3, {row("τ^2", {"ε", "ε", "τ^2"}, {2, 0, 1}),
                           row("τ^-2", {"ε", "τ^-2", "ε"}, {1, 2, 0})});
}

// Single generator acting like the odometer: the two-factor nucleus state of
// the basilica automaton, taken as a machine of its own.
inline Automaton basilica_embedded_odometer() {
    return from_wreath(2, {row("a^-1·b", {"b^-1·a", "ε"}, {1, 0}),
                           row("b^-1·a", {"ε", "a^-1·b"}, {1, 0})});
}

inline const Automaton& ex(const std::string& name) { return find_example(name).generating; }

inline const Automaton& ex_nucleus(const std::string& name) {
    return *find_example(name).nucleus;
}

// ---- table-walking evaluator (independent of GroupOps) -------------------

inline std::vector<std::size_t> oracle_apply_one(const Automaton& a, std::size_t q, int sign,
                                                 const std::vector<std::size_t>& w) {
    std::vector<std::size_t> out;
    out.reserve(w.size());
    std::size_t cur = q;
    for (std::size_t x : w) {
        if (sign > 0) {
            out.push_back(a.sigma[x][cur]);
            cur = a.tau[x][cur];
        } else {
            std::size_t pre = 0;
            while (a.sigma[pre][cur] != x) ++pre;  // unique by invertibility
            out.push_back(pre);
            cur = a.tau[pre][cur];
        }
    }
    return out;
}

inline std::vector<std::size_t> oracle_apply(const Automaton& a, const RawWord& word,
                                             std::vector<std::size_t> w) {
    for (const SignedState& s : word) w = oracle_apply_one(a, s.state, s.sign, w);
    return w;
}

// ---- enumeration ----------------------------------------------------------

inline std::vector<std::vector<std::size_t>> all_words(std::size_t k, std::size_t len) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> w(len, 0);
    while (true) {
        out.push_back(w);
        std::size_t i = len;
        while (i > 0) {
            if (++w[i - 1] < k) break;
            w[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

// All signed words of exactly `len` factors over the generator states.
inline std::vector<RawWord> all_signed_words(const Automaton& a, std::size_t len) {
    std::vector<SignedState> letters;
    for (std::size_t q = 0; q < a.states.size(); ++q) {
        if (a.identity && *a.identity == q) continue;
        letters.push_back({q, 1});
        letters.push_back({q, -1});
    }
    std::vector<RawWord> out{{}};
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<RawWord> next;
        for (const RawWord& w : out)
            for (const SignedState& s : letters) {
                RawWord v = w;
                v.push_back(s);
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

inline RawWord W(const Automaton& a, const std::string& text) { return parse_word_text(a, text); }

inline std::vector<std::size_t> L(const std::string& key, std::size_t k = 2) {
    return parse_word_key(key, k);
}

}  // namespace ssa::test

#endif
