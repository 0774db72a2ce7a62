/* automaton.hpp -- finite Mealy automata over a common input/output alphabet
 *
 * An Automaton is a finite set of named states acting letter-by-letter on
 * words over the alphabet {0..k-1}: sigma gives the rewritten letter,
 * tau the state that handles the rest of the word.  Both tables are total.
 * All operations here are pure; automata are immutable once validated.
 */

#ifndef SSA_AUTOMATON_HPP
#define SSA_AUTOMATON_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ssa {

/* Thrown for domain errors (bad tables, mismatched alphabets, ...).
 * `code` is a stable machine-readable identifier used by the CLI. */
class domain_error : public std::exception {
public:
    domain_error(std::string code, std::string message)
        : code_(std::move(code)), message_(std::move(message)) {}
    const char* what() const noexcept override { return message_.c_str(); }
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
    std::string message_;
};

struct Automaton {
    // Letters are dense integers 0..alphabet_size-1.
    std::size_t alphabet_size = 0;
    // State names; insertion order is the canonical order everywhere.
    std::vector<std::string> states;
    // Index of a state acting as the identity (sigma(a,e)=a, tau(a,e)=e), if any.
    std::optional<std::size_t> identity;
    // sigma[a][q] = output letter, tau[a][q] = next state.  Row = letter, column = state.
    std::vector<std::vector<std::size_t>> sigma;
    std::vector<std::vector<std::size_t>> tau;
    // Display names for letters; defaults to "0","1",....  Not serialized: the
    // JSON schema fixes letters as integers.  dual() threads names through so
    // that dual(dual(A)) restores the original state names.
    std::vector<std::string> letter_names;

    std::size_t state_count() const { return states.size(); }
    const std::string& letter_name(std::size_t a) const;
    std::size_t state_index(const std::string& name) const;  // throws if absent
};

// Verifies table shapes, ranges, name uniqueness and the identity contract.
void validate(const Automaton& a);

// Equality on the serialized content (names, identity, tables); letter display
// names are ignored.
bool structurally_equal(const Automaton& x, const Automaton& y);

struct LabeledGraph {
    struct Edge {
        std::size_t source = 0;
        std::size_t target = 0;
        std::string label;
    };
    std::vector<std::string> vertices;  // ordered keys
    std::vector<Edge> edges;            // loops and parallel edges allowed
};

/* Same graph up to vertex order: equal vertex-name sets and equal multisets
 * of (source name, target name, label) triples. */
bool graphs_equal(const LabeledGraph& x, const LabeledGraph& y);

/* One wreath-recursion row: state `name` maps a ↦ root_image[a] at the root
 * and delegates the tail to the state named restrictions[a]. */
struct WreathRow {
    std::string name;
    std::vector<std::string> restrictions;  // one state name per letter
    std::vector<std::size_t> root_image;    // permutation images of 0..k-1
};

/* Builds an automaton from wreath-recursion rows.  A row restriction may name
 * `identity_name` without a matching row; the identity state is then adjoined
 * as the last state.  Every other named restriction must have a row. */
Automaton from_wreath(std::size_t alphabet_size, const std::vector<WreathRow>& rows,
                      const std::string& identity_name = "ε");

// Vertices = states; one edge q -> tau(a,q) labeled "a/sigma(a,q)" per (q,a),
// emitted states-outer, letters-inner.
LabeledGraph graph_of(const Automaton& a);

// Exchanges the roles of letters and states: the dual has alphabet = old
// states, states = old letters, sigma*(q,a) = tau(a,q), tau*(q,a) = sigma(a,q).
// The identity designation does not survive (letters are not group elements).
Automaton dual(const Automaton& a);

// State set = pairs (q,q') with the left factor applied first:
// sigma''(a,(q,q')) = sigma'(sigma(a,q),q'), tau''(a,(q,q')) = (tau(a,q), tau'(sigma(a,q),q')).
// Pair states are named "(q,q')", ordered left-major.  Requires equal alphabets.
Automaton product(const Automaton& left, const Automaton& right);

// Left-associated iterated product; power(a,1) is a copy of `a`.
Automaton power(const Automaton& a, std::size_t n);

struct ActResult {
    std::vector<std::size_t> output;      // sigma(input, state_word)
    std::vector<std::size_t> transition;  // tau(input, state_word), one state per word factor
};

/* Extended action of a state word on a letter word.  The first state in
 * `state_word` is applied first; `transition` is the state word that would
 * continue processing letters appended to `input`. */
ActResult act(const Automaton& a, const std::vector<std::size_t>& state_word,
              const std::vector<std::size_t>& input);

// True iff sigma(.,q) is a bijection on letters for every state q.
bool is_invertible(const Automaton& a);

/* Formal inverse machine: one state q^-1 per state q, with
 * sigma(a,q^-1) = the letter b such that sigma(b,q) = a, and
 * tau(a,q^-1) = (tau(b,q))^-1.  The identity state keeps its name and maps to
 * itself.  Other states are renamed "name^-1". */
Automaton inverse_automaton(const Automaton& a);

struct MinimizeResult {
    Automaton automaton;
    std::vector<std::size_t> state_map;  // old state index -> new state index
};

/* Merges states inducing the same tree transformation (partition refinement
 * seeded by the sigma columns, split on tau successor classes until stable).
 * Class representatives keep the earliest original name; the identity
 * designation follows its class. */
MinimizeResult minimize(const Automaton& a);

/* ASCII table with one cell per (letter, state), states outer (rows), letters
 * inner (columns).  Each cell shows sigma(a,q) on top, q / tau(a,q) on the
 * middle row, a on the bottom.  Widths count UTF-8 codepoints. */
std::string render_square_tiles(const Automaton& a);

// "0110" for alphabets up to 10 letters, "0,1,1,0" otherwise.
std::string word_key(const std::vector<std::size_t>& word, std::size_t alphabet_size);
std::vector<std::size_t> parse_word_key(const std::string& key, std::size_t alphabet_size);

}  // namespace ssa

#endif
