/* group_word.hpp -- elements of the group generated by an invertible automaton
 *
 * A group element is a word over signed states (state, +1/-1), the first
 * factor acting first.  Restriction by a letter word preserves raw length;
 * equality of the induced tree automorphisms is decided by closing the pair
 * graph of simultaneous restrictions under single letters, merging pairs with
 * a union-find so the closure stays near-linear in reachable raw words.
 */

#ifndef SSA_GROUP_WORD_HPP
#define SSA_GROUP_WORD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ssa/automaton.hpp"

namespace ssa {

struct SignedState {
    std::size_t state = 0;
    int sign = 1;  // +1 or -1
    friend bool operator==(const SignedState& a, const SignedState& b) {
        return a.state == b.state && a.sign == b.sign;
    }
    friend bool operator<(const SignedState& a, const SignedState& b) {
        return a.state != b.state ? a.state < b.state : a.sign > b.sign;  // + sorts before -
    }
};

using RawWord = std::vector<SignedState>;

/* Evaluation engine for signed words over one invertible automaton.
 * Holds a reference to the automaton (caller keeps it alive) plus the
 * inverted output columns needed to run states backwards. */
class GroupOps {
public:
    explicit GroupOps(const Automaton& a);

    const Automaton& automaton() const { return *aut_; }

    // Output letter and successor factor when `s` consumes `letter`.
    std::pair<std::size_t, SignedState> step(SignedState s, std::size_t letter) const;

    // Image of `input` under the word, first factor applied first.
    std::vector<std::size_t> apply(const RawWord& w, const std::vector<std::size_t>& input) const;

    // tau(input, w): the word continuing the computation below `input`.  Same length as w.
    RawWord restrict(const RawWord& w, const std::vector<std::size_t>& input) const;

    // The level-1 permutation a ↦ w(a).
    std::vector<std::size_t> root_permutation(const RawWord& w) const;

    // Cancels adjacent mutually inverse factors and drops designated identity factors.
    RawWord free_reduce(const RawWord& w) const;

    RawWord inverse(const RawWord& w) const;

    /* True iff v and w induce the same automorphism of the letter tree.
     * Throws domain_error("equals_cap") after `pair_cap` processed pairs. */
    bool equals(const RawWord& v, const RawWord& w, std::size_t pair_cap = 1000000) const;

    /* Flattened outputs of all words of length `depth` in lexicographic input
     * order.  Equal elements have equal signatures, so signature mismatch is a
     * sound fast path for inequality. */
    std::vector<std::size_t> signature(const RawWord& w, std::size_t depth) const;

    std::uint64_t signature_hash(const RawWord& w, std::size_t depth) const;

private:
    const Automaton* aut_;
    // inv_sigma[a][q] = the letter q maps to a; inv_tau[a][q] = tau(inv_sigma[a][q], q).
    std::vector<std::vector<std::size_t>> inv_sigma_;
    std::vector<std::vector<std::size_t>> inv_tau_;
};

/* Self-contained element handle used at API boundaries (CLI, reports). */
struct GroupWord {
    std::shared_ptr<const Automaton> automaton;
    RawWord word;
};

struct WreathDecomposition {
    std::vector<RawWord> restrictions;        // one per letter
    std::vector<std::size_t> root_permutation;
};

WreathDecomposition wreath_decomposition(const GroupOps& ops, const RawWord& w);

// "a·b^-1" (factors joined by U+00B7); the empty word prints as the identity
// state's name when designated, else as "1".
std::string word_text(const Automaton& a, const RawWord& w);

/* Parses the text form.  Factors are matched against state names first (so a
 * state literally named "x^-1" wins), then as name + "^-1" for the formal
 * inverse.  The identity-state name and "1" denote the empty word. */
RawWord parse_word_text(const Automaton& a, const std::string& text);

}  // namespace ssa

#endif
