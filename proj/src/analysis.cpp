/* analysis.cpp -- decision procedures on automaton groups
 *
 * The nucleus closure is the heart of the file: starting from the identity
 * and the signed generators, it repeatedly forms pair products and collects
 * every element that recurs arbitrarily deep in their restriction graphs
 * (the nodes on or reachable from a cycle).  Bounded searches elsewhere
 * (recurrence, restriction depth) share the same interning helpers.
 */

#include "ssa/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace ssa {
namespace {

constexpr std::size_t kGraphNodeCap = 200000;      // raw restriction graph nodes per product
constexpr std::size_t kSearchVisitedCap = 200000;  // recurrence product search nodes
constexpr std::size_t kDepthVisitedCap = 100000;   // restriction-depth frontier total
constexpr std::size_t kSigDepth = 4;               // action-signature depth for hashing

struct RawWordHash {
    std::size_t operator()(const RawWord& w) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (const SignedState& s : w) {
            h ^= static_cast<std::uint64_t>(s.state) * 2 + (s.sign < 0 ? 1 : 0);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

bool word_less(const RawWord& x, const RawWord& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

RawWord concat(const RawWord& x, const RawWord& y) {
    RawWord out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

// Thrown when the nucleus closure leaves its configured bounds.
struct CapHit {
    std::string witness;
};

/* Interning pool of group elements keyed by tree action.  Index 0 is the
 * identity.  Lookups reduce the word, bucket by action-signature hash and
 * confirm with the exact equality decision, so each element is stored once. */
class ElementPool {
public:
    ElementPool(const GroupOps& ops, std::size_t max_elements, std::size_t max_len)
        : ops_(ops), max_elements_(max_elements), max_len_(max_len) {
        elems_.push_back({});
        buckets_[ops_.signature_hash({}, kSigDepth)].push_back(0);
    }

    // Returns (element index, true if newly inserted).  Throws CapHit when an
    // insertion would exceed max_len or max_elements.
    std::pair<std::size_t, bool> find_or_insert(const RawWord& raw) {
        RawWord w = ops_.free_reduce(raw);
        std::uint64_t h = ops_.signature_hash(w, kSigDepth);
        auto& bucket = buckets_[h];
        for (std::size_t idx : bucket) {
            if (ops_.equals(w, elems_[idx])) return {idx, false};
        }
        if (w.size() > max_len_) {
            std::ostringstream os;
            os << "representative " << word_text(ops_.automaton(), w) << " has reduced length "
               << w.size() << " > max_len=" << max_len_;
            throw CapHit{os.str()};
        }
        if (elems_.size() >= max_elements_) {
            std::ostringstream os;
            os << "candidate count would exceed max_elements=" << max_elements_;
            throw CapHit{os.str()};
        }
        std::size_t id = elems_.size();
        elems_.push_back(std::move(w));
        bucket.push_back(id);
        return {id, true};
    }

    const std::vector<RawWord>& elements() const { return elems_; }

private:
    const GroupOps& ops_;
    std::size_t max_elements_;
    std::size_t max_len_;
    std::vector<RawWord> elems_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

/* Restriction graph of one raw word: nodes are the raw words reachable from
 * it by single-letter restriction (lengths never change), with one edge per
 * letter.  `retained` marks the limit set: nodes on or reachable from a
 * cycle, i.e. the words that keep reappearing at arbitrary depth. */
struct RawGraph {
    std::vector<RawWord> words;
    std::vector<std::vector<std::size_t>> succ;  // succ[node][letter]
    std::vector<char> retained;
};

RawGraph restriction_graph(const GroupOps& ops, const RawWord& start) {
    const std::size_t k = ops.automaton().alphabet_size;
    RawGraph g;
    std::unordered_map<RawWord, std::size_t, RawWordHash> index;
    g.words.push_back(start);
    index.emplace(start, 0);
    for (std::size_t i = 0; i < g.words.size(); ++i) {
        g.succ.emplace_back(k, 0);
        for (std::size_t a = 0; a < k; ++a) {
            RawWord child = ops.restrict(g.words[i], {a});
            auto it = index.find(child);
            std::size_t id;
            if (it == index.end()) {
                if (g.words.size() >= kGraphNodeCap) {
                    std::ostringstream os;
                    os << "restriction graph of " << word_text(ops.automaton(), start)
                       << " exceeded " << kGraphNodeCap << " nodes";
                    throw CapHit{os.str()};
                }
                id = g.words.size();
                g.words.push_back(child);
                index.emplace(std::move(child), id);
            } else {
                id = it->second;
            }
            g.succ[i][a] = id;
        }
    }
    // Peel nodes of in-degree zero; whatever survives is on or behind a cycle.
    std::vector<std::size_t> indeg(g.words.size(), 0);
    for (const auto& row : g.succ)
        for (std::size_t t : row) ++indeg[t];
    std::queue<std::size_t> zero;
    std::vector<char> peeled(g.words.size(), 0);
    for (std::size_t i = 0; i < g.words.size(); ++i)
        if (indeg[i] == 0) {
            zero.push(i);
            peeled[i] = 1;
        }
    while (!zero.empty()) {
        std::size_t i = zero.front();
        zero.pop();
        for (std::size_t t : g.succ[i])
            if (--indeg[t] == 0) {
                zero.push(t);
                peeled[t] = 1;
            }
    }
    g.retained.resize(g.words.size());
    for (std::size_t i = 0; i < g.words.size(); ++i) g.retained[i] = !peeled[i];
    return g;
}

/* Best-effort description of why restrictions recur: from a retained node,
 * following letter 0 must eventually close a cycle W -> ... -> W, giving a
 * word that is its own restriction along a letter path. */
std::string self_restriction_note(const GroupOps& ops, const RawGraph& g, std::size_t start) {
    std::unordered_map<std::size_t, std::size_t> seen;  // node -> step index
    std::size_t cur = start;
    std::size_t step = 0;
    while (seen.emplace(cur, step).second) {
        cur = g.succ[cur][0];
        ++step;
    }
    std::size_t cycle_len = step - seen[cur];
    std::ostringstream os;
    os << "; restrictions recur: W := " << word_text(ops.automaton(), g.words[cur])
       << " satisfies W|_u = W for u = "
       << word_key(std::vector<std::size_t>(cycle_len, 0), ops.automaton().alphabet_size);
    return os.str();
}

bool identity_like(const GroupOps& ops, std::size_t state) {
    return ops.equals({{state, 1}}, {});
}

std::vector<std::size_t> decode_level_word(std::size_t idx, std::size_t k, std::size_t n) {
    std::vector<std::size_t> w(n);
    for (std::size_t i = n; i-- > 0;) {
        w[i] = idx % k;
        idx /= k;
    }
    return w;
}

std::size_t encode_level_word(const std::vector<std::size_t>& w, std::size_t k) {
    std::size_t idx = 0;
    for (std::size_t a : w) idx = idx * k + a;
    return idx;
}

// Number of length-n words, or nullopt when it exceeds `cap`.
std::optional<std::size_t> level_size(std::size_t k, std::size_t n, std::size_t cap) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > cap / (k == 0 ? 1 : k)) return std::nullopt;
        total *= k;
        if (total > cap) return std::nullopt;
    }
    return total;
}

}  // namespace

std::vector<std::size_t> generator_states(const Automaton& a) {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < a.state_count(); ++q)
        if (!a.identity || *a.identity != q) out.push_back(q);
    return out;
}

Automaton ensure_identity(const Automaton& a) {
    if (a.identity) return a;
    Automaton out = a;
    std::string name = "ε";
    for (const char* fallback : {"e", "identity"}) {
        if (std::find(out.states.begin(), out.states.end(), name) == out.states.end()) break;
        name = fallback;
    }
    while (std::find(out.states.begin(), out.states.end(), name) != out.states.end()) name += "'";
    std::size_t id = out.states.size();
    out.states.push_back(name);
    for (std::size_t x = 0; x < out.alphabet_size; ++x) {
        out.sigma[x].push_back(x);
        out.tau[x].push_back(id);
    }
    out.identity = id;
    return out;
}

NucleusReport nucleus(const Automaton& a, std::size_t max_elements, std::size_t max_len) {
    GroupOps ops(a);
    NucleusReport rep;
    rep.max_elements = max_elements;
    rep.max_len = max_len;

    ElementPool pool(ops, max_elements, max_len);
    std::vector<char> in_nucleus{1};  // the identity is always a member
    std::deque<std::pair<std::size_t, std::size_t>> todo;
    auto on_insert = [&](std::size_t m) {
        in_nucleus.push_back(0);
        for (std::size_t t = 0; t <= m; ++t) todo.emplace_back(m, t);
        for (std::size_t t = 0; t < m; ++t) todo.emplace_back(t, m);
    };
    todo.emplace_back(0, 0);

    auto finish = [&](NucleusReport::Status status, std::string witness) {
        rep.status = status;
        rep.witness = std::move(witness);
        for (std::size_t i = 0; i < pool.elements().size(); ++i)
            if (in_nucleus[i]) rep.nucleus.push_back(pool.elements()[i]);
        // Representatives prefer a plain state when the class contains one;
        // the identity keeps its canonical empty-word form.
        for (RawWord& w : rep.nucleus) {
            if (w.empty() || (w.size() == 1 && w[0].sign == 1)) continue;
            for (std::size_t q = 0; q < a.state_count(); ++q)
                if (ops.equals(w, {{q, 1}})) {
                    w = {{q, 1}};
                    break;
                }
        }
        std::sort(rep.nucleus.begin(), rep.nucleus.end(), word_less);
    };

    try {
        for (std::size_t q : generator_states(a)) {
            for (int sign : {1, -1}) {
                auto [idx, inserted] = pool.find_or_insert({{q, sign}});
                if (inserted) on_insert(idx);
            }
        }
    } catch (const CapHit& hit) {
        finish(NucleusReport::Status::ExceededBound, hit.witness + " (while seeding generators)");
        return rep;
    }

    while (!todo.empty()) {
        auto [i, j] = todo.front();
        todo.pop_front();
        RawWord prod = concat(pool.elements()[i], pool.elements()[j]);
        try {
            RawGraph g = restriction_graph(ops, prod);
            for (std::size_t n = 0; n < g.words.size(); ++n) {
                if (!g.retained[n]) continue;
                std::size_t idx;
                bool inserted;
                try {
                    std::tie(idx, inserted) = pool.find_or_insert(g.words[n]);
                } catch (CapHit& hit) {
                    hit.witness += self_restriction_note(ops, g, n);
                    throw;
                }
                if (inserted) on_insert(idx);
                in_nucleus[idx] = 1;
            }
        } catch (const CapHit& hit) {
            finish(NucleusReport::Status::ExceededBound,
                   hit.witness + " (while closing " + word_text(a, prod) + ")");
            return rep;
        } catch (const domain_error& e) {
            if (e.code() != "equals_cap") throw;
            finish(NucleusReport::Status::ExceededBound,
                   std::string("equality decision exceeded its pair cap (while closing ") +
                       word_text(a, prod) + ")");
            return rep;
        }
    }

    finish(NucleusReport::Status::Contracting, "");

    // Package the nucleus as an automaton: states are the members, transitions
    // their letter restrictions (the set is restriction-closed by construction).
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> lookup;
    for (std::size_t i = 0; i < rep.nucleus.size(); ++i)
        lookup[ops.signature_hash(rep.nucleus[i], kSigDepth)].push_back(i);
    auto locate = [&](const RawWord& w) {
        RawWord r = ops.free_reduce(w);
        for (std::size_t idx : lookup[ops.signature_hash(r, kSigDepth)])
            if (ops.equals(r, rep.nucleus[idx])) return idx;
        throw std::logic_error("nucleus closure is not restriction-closed");
    };

    Automaton na;
    na.alphabet_size = a.alphabet_size;
    na.letter_names = a.letter_names;
    na.identity = 0;  // the empty word sorts first
    for (const RawWord& w : rep.nucleus) {
        // The identity state takes the input's identity name when one is
        // designated and the conventional "ε" otherwise (never the bare "1"
        // the textual form falls back to).
        std::string name =
            w.empty() ? (a.identity ? a.states[*a.identity] : std::string("ε")) : word_text(a, w);
        while (std::find(na.states.begin(), na.states.end(), name) != na.states.end())
            name += "'";
        na.states.push_back(name);
    }
    na.sigma.assign(a.alphabet_size, std::vector<std::size_t>(rep.nucleus.size(), 0));
    na.tau.assign(a.alphabet_size, std::vector<std::size_t>(rep.nucleus.size(), 0));
    for (std::size_t i = 0; i < rep.nucleus.size(); ++i) {
        for (std::size_t x = 0; x < a.alphabet_size; ++x) {
            na.sigma[x][i] = ops.apply(rep.nucleus[i], {x})[0];
            na.tau[x][i] = locate(ops.restrict(rep.nucleus[i], {x}));
        }
    }
    validate(na);
    rep.nuclear_automaton = std::move(na);
    return rep;
}

ContractionReport is_contracting(const Automaton& a, std::size_t max_elements,
                                 std::size_t max_len) {
    ContractionReport r;
    r.detail = nucleus(a, max_elements, max_len);
    r.value = r.detail.status == NucleusReport::Status::Contracting
                  ? ContractionReport::Value::Yes
                  : ContractionReport::Value::Unknown;
    return r;
}

bool check_tau_onto(const Automaton& a) {
    std::vector<char> seen(a.state_count(), 0);
    for (const auto& row : a.tau)
        for (std::size_t q : row) seen[q] = 1;
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool is_nuclear(const Automaton& a) {
    Automaton m = minimize(a).automaton;
    GroupOps ops(m);
    NucleusReport r = nucleus(m, 2 * m.state_count() + 2, 8);
    if (r.status != NucleusReport::Status::Contracting) return false;
    // Every member must be realized by a state and every state be a member.
    for (const RawWord& w : r.nucleus) {
        bool hit = false;
        for (std::size_t q = 0; q < m.state_count() && !hit; ++q)
            hit = ops.equals(w, {{q, 1}});
        if (!hit) return false;
    }
    for (std::size_t q = 0; q < m.state_count(); ++q) {
        bool hit = false;
        for (const RawWord& w : r.nucleus) {
            if (ops.equals({{q, 1}}, w)) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

namespace {

/* Letter graph used by smoothness: an edge a -> sigma(a,q) for every state q
 * whose restriction tau(a,q) acts as the identity. */
std::vector<std::vector<char>> trivial_restriction_edges(const Automaton& a,
                                                         const GroupOps& ops) {
    const std::size_t k = a.alphabet_size;
    std::vector<char> idlike(a.state_count());
    for (std::size_t q = 0; q < a.state_count(); ++q) idlike[q] = identity_like(ops, q);
    std::vector<std::vector<char>> adj(k, std::vector<char>(k, 0));
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (std::size_t x = 0; x < k; ++x)
            if (idlike[a.tau[x][q]]) adj[x][a.sigma[x][q]] = 1;
    return adj;
}

bool strongly_connected(const std::vector<std::vector<char>>& adj) {
    const std::size_t n = adj.size();
    if (n == 0) return true;
    auto reach = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::queue<std::size_t> q;
        q.push(0);
        seen[0] = 1;
        std::size_t count = 1;
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            for (std::size_t w = 0; w < n; ++w) {
                bool edge = forward ? adj[v][w] : adj[w][v];
                if (edge && !seen[w]) {
                    seen[w] = 1;
                    ++count;
                    q.push(w);
                }
            }
        }
        return count == n;
    };
    return reach(true) && reach(false);
}

}  // namespace

bool is_smooth(const Automaton& a) {
    if (!check_tau_onto(a)) return false;
    GroupOps ops(a);
    return strongly_connected(trivial_restriction_edges(a, ops));
}

ExpansionRule expansion_rule(const Automaton& a) {
    ExpansionRule rule;
    if (!check_tau_onto(a)) return rule;
    GroupOps ops(a);
    const std::size_t k = a.alphabet_size;

    std::vector<char> idlike(a.state_count());
    for (std::size_t q = 0; q < a.state_count(); ++q) idlike[q] = identity_like(ops, q);
    // edge_state[x][y]: smallest state carrying an identity restriction from x to y.
    std::vector<std::vector<std::optional<std::size_t>>> edge_state(
        k, std::vector<std::optional<std::size_t>>(k));
    std::vector<std::vector<char>> adj(k, std::vector<char>(k, 0));
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (std::size_t x = 0; x < k; ++x)
            if (idlike[a.tau[x][q]]) {
                std::size_t y = a.sigma[x][q];
                adj[x][y] = 1;
                if (!edge_state[x][y]) edge_state[x][y] = q;
            }
    if (!strongly_connected(adj)) return rule;

    rule.present = true;
    rule.entry_letter.assign(a.state_count(), 0);
    rule.entry_state.assign(a.state_count(), 0);
    for (std::size_t q = 0; q < a.state_count(); ++q) {
        bool found = false;
        for (std::size_t x = 0; x < k && !found; ++x)
            for (std::size_t v = 0; v < a.state_count() && !found; ++v)
                if (a.tau[x][v] == q) {
                    rule.entry_letter[q] = x;
                    rule.entry_state[q] = v;
                    found = true;
                }
    }
    rule.connector.assign(k, std::vector<std::vector<std::size_t>>(k));
    for (std::size_t from = 0; from < k; ++from) {
        std::vector<int> prev(k, -1);
        std::vector<char> seen(k, 0);
        std::queue<std::size_t> bfs;
        bfs.push(from);
        seen[from] = 1;
        while (!bfs.empty()) {
            std::size_t v = bfs.front();
            bfs.pop();
            for (std::size_t w = 0; w < k; ++w)
                if (adj[v][w] && !seen[w]) {
                    seen[w] = 1;
                    prev[w] = static_cast<int>(v);
                    bfs.push(w);
                }
        }
        for (std::size_t to = 0; to < k; ++to) {
            std::vector<std::size_t> path;  // letters along from -> to, reversed
            for (std::size_t v = to; v != from; v = static_cast<std::size_t>(prev[v]))
                path.push_back(v);
            std::vector<std::size_t>& word = rule.connector[from][to];
            std::size_t at = from;
            for (std::size_t idx = path.size(); idx-- > 0;) {
                word.push_back(*edge_state[at][path[idx]]);
                at = path[idx];
            }
        }
    }
    return rule;
}

bool open_set_condition(const Automaton& a) {
    GroupOps ops(a);
    std::vector<char> idlike(a.state_count());
    for (std::size_t q = 0; q < a.state_count(); ++q) idlike[q] = identity_like(ops, q);
    for (std::size_t q = 0; q < a.state_count(); ++q) {
        std::vector<char> seen(a.state_count(), 0);
        std::queue<std::size_t> bfs;
        bfs.push(q);
        seen[q] = 1;
        bool ok = false;
        while (!bfs.empty() && !ok) {
            std::size_t v = bfs.front();
            bfs.pop();
            if (idlike[v]) {
                ok = true;
                break;
            }
            for (std::size_t x = 0; x < a.alphabet_size; ++x) {
                std::size_t w = a.tau[x][v];
                if (!seen[w]) {
                    seen[w] = 1;
                    bfs.push(w);
                }
            }
        }
        if (!ok) return false;
    }
    return true;
}

RecurrenceReport recurrence(const Automaton& a, std::size_t search_len) {
    GroupOps ops(a);
    RecurrenceReport rep;
    rep.search_len = search_len;
    const std::size_t k = a.alphabet_size;
    std::vector<std::size_t> gens = generator_states(a);
    bool all_found = true;

    for (std::size_t x0 = 0; x0 < k; ++x0) {
        RecurrenceLetter L;
        L.letter = x0;

        // Orbit of x0 with a transversal; FIFO queue, generators in order.
        std::vector<RawWord> trans(k);
        std::vector<char> seen(k, 0);
        std::queue<std::size_t> bfs;
        seen[x0] = 1;
        bfs.push(x0);
        L.orbit.push_back(x0);
        while (!bfs.empty()) {
            std::size_t x = bfs.front();
            bfs.pop();
            for (std::size_t g : gens)
                for (int sign : {1, -1}) {
                    SignedState s{g, sign};
                    std::size_t y = ops.apply({s}, {x})[0];
                    if (!seen[y]) {
                        seen[y] = 1;
                        trans[y] = trans[x];
                        trans[y].push_back(s);
                        L.orbit.push_back(y);
                        bfs.push(y);
                    }
                }
        }

        std::unordered_set<RawWord, RawWordHash> dedup;
        for (std::size_t x : L.orbit)
            for (std::size_t g : gens)
                for (int sign : {1, -1}) {
                    SignedState s{g, sign};
                    std::size_t y = ops.apply({s}, {x})[0];
                    RawWord w = trans[x];
                    w.push_back(s);
                    w = ops.free_reduce(concat(w, ops.inverse(trans[y])));
                    if (w.empty() || !dedup.insert(w).second) continue;
                    L.schreier_generators.push_back(w);
                    L.restricted.push_back(ops.free_reduce(ops.restrict(w, {x0})));
                }

        // Search each automaton generator among bounded products of the
        // restricted generators and their inverses.
        struct Node {
            RawWord word;
            std::size_t parent;
            std::size_t via;  // 2*i (restricted[i]) or 2*i+1 (its inverse)
        };
        std::vector<Node> nodes{{{}, 0, 0}};
        std::unordered_set<std::uint64_t> visited{ops.signature_hash({}, kSigDepth)};
        L.witness.assign(gens.size(), std::nullopt);
        std::size_t pending = gens.size();
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> target;
        for (std::size_t t = 0; t < gens.size(); ++t)
            target[ops.signature_hash({{gens[t], 1}}, kSigDepth)].push_back(t);

        auto build_witness = [&](std::size_t node) {
            RawWord w;
            std::vector<std::size_t> path;
            for (std::size_t n = node; n != 0; n = nodes[n].parent) path.push_back(nodes[n].via);
            for (std::size_t idx = path.size(); idx-- > 0;) {
                std::size_t via = path[idx];
                RawWord factor = L.restricted[via / 2];
                if (via % 2) factor = ops.inverse(factor);
                w = concat(w, factor);
            }
            return w;
        };
        auto check_node = [&](std::size_t node) {
            auto it = target.find(ops.signature_hash(nodes[node].word, kSigDepth));
            if (it == target.end()) return;
            for (std::size_t t : it->second) {
                if (L.witness[t]) continue;
                if (ops.equals(nodes[node].word, {{gens[t], 1}})) {
                    L.witness[t] = build_witness(node);
                    --pending;
                }
            }
        };

        check_node(0);
        std::size_t lo = 0, hi = nodes.size();
        for (std::size_t depth = 0; depth < search_len && pending > 0; ++depth) {
            for (std::size_t n = lo; n < hi && pending > 0; ++n) {
                for (std::size_t via = 0; via < 2 * L.restricted.size() && pending > 0; ++via) {
                    RawWord factor = L.restricted[via / 2];
                    if (via % 2) factor = ops.inverse(factor);
                    RawWord w = ops.free_reduce(concat(nodes[n].word, factor));
                    if (!visited.insert(ops.signature_hash(w, kSigDepth)).second) continue;
                    nodes.push_back({std::move(w), n, via});
                    check_node(nodes.size() - 1);
                    if (nodes.size() >= kSearchVisitedCap) break;
                }
                if (nodes.size() >= kSearchVisitedCap) break;
            }
            lo = hi;
            hi = nodes.size();
            if (lo == hi || nodes.size() >= kSearchVisitedCap) break;
        }

        if (pending > 0) all_found = false;
        rep.per_letter.push_back(std::move(L));
    }

    rep.status = all_found ? RecurrenceReport::Status::Verified : RecurrenceReport::Status::Unknown;
    return rep;
}

std::vector<bool> spherical_transitivity(const Automaton& a, std::size_t max_level,
                                         std::size_t level_cap) {
    std::vector<std::size_t> gens = generator_states(a);
    std::vector<bool> out;
    for (std::size_t n = 1; n <= max_level; ++n) {
        auto total = level_size(a.alphabet_size, n, level_cap);
        if (!total) {
            std::ostringstream os;
            os << "level " << n << " has more than " << level_cap << " words";
            throw domain_error("level_cap", os.str());
        }
        std::vector<std::size_t> parent(*total);
        for (std::size_t i = 0; i < *total; ++i) parent[i] = i;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
            while (parent[v] != v) {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            return v;
        };
        for (std::size_t idx = 0; idx < *total; ++idx) {
            std::vector<std::size_t> w = decode_level_word(idx, a.alphabet_size, n);
            for (std::size_t g : gens) {
                std::size_t img = encode_level_word(act(a, {g}, w).output, a.alphabet_size);
                std::size_t ra = find(idx), rb = find(img);
                if (ra != rb) parent[rb] = ra;
            }
        }
        std::size_t roots = 0;
        for (std::size_t i = 0; i < *total; ++i)
            if (find(i) == i) ++roots;
        out.push_back(roots == 1);
    }
    return out;
}

RestrictionDepth restriction_depth(const GroupOps& ops, const RawWord& g,
                                   const std::vector<RawWord>& nucleus,
                                   std::size_t depth_cap) {
    std::unordered_map<std::uint64_t, std::vector<const RawWord*>> members;
    for (const RawWord& w : nucleus) members[ops.signature_hash(w, kSigDepth)].push_back(&w);
    auto in_nucleus = [&](const RawWord& w) {
        auto it = members.find(ops.signature_hash(w, kSigDepth));
        if (it == members.end()) return false;
        for (const RawWord* m : it->second)
            if (ops.equals(w, *m)) return true;
        return false;
    };

    const std::size_t k = ops.automaton().alphabet_size;
    std::vector<RawWord> frontier;
    RawWord start = ops.free_reduce(g);
    if (!in_nucleus(start)) frontier.push_back(std::move(start));
    std::size_t processed = frontier.size();
    if (frontier.empty()) return {true, 0};
    for (std::size_t d = 1; d <= depth_cap; ++d) {
        std::unordered_set<RawWord, RawWordHash> next;
        for (const RawWord& w : frontier)
            for (std::size_t x = 0; x < k; ++x) {
                RawWord c = ops.free_reduce(ops.restrict(w, {x}));
                if (!in_nucleus(c)) next.insert(std::move(c));
            }
        processed += next.size();
        if (next.empty()) return {true, d};
        if (processed > kDepthVisitedCap) return {false, depth_cap};
        frontier.assign(next.begin(), next.end());
        std::sort(frontier.begin(), frontier.end(), word_less);  // determinism
    }
    return {false, depth_cap};
}

namespace {

using Perm = std::vector<std::uint32_t>;

bool perm_is_identity(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

Perm perm_inverse(const Perm& p) {
    Perm inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<std::uint32_t>(i);
    return inv;
}

/* Deterministic stabilizer chain with explicit transversals when they fit in
 * memory and Schreier-vector walks otherwise.  Base points are the smallest
 * moved points encountered; orbits are BFS in generator order. */
class StabChain {
public:
    explicit StabChain(std::size_t degree) : degree_(degree) {}

    void add(const Perm& g) {
        if (!perm_is_identity(g)) insert(0, g);
    }

    BigUint order() const {
        BigUint n(1);
        for (const Level& lv : levels_) n *= static_cast<std::uint64_t>(lv.orbit.size());
        return n;
    }

private:
    static constexpr std::size_t kMemoEntryCap = 8000000;

    struct Level {
        std::size_t base = 0;
        std::vector<Perm> gens, gen_inv;
        std::vector<std::uint32_t> orbit;      // discovery order
        std::vector<std::int64_t> pos;         // point -> orbit position or -1
        std::vector<std::int64_t> parent;      // orbit position -> parent position
        std::vector<std::size_t> via;          // orbit position -> label index
        bool memo = false;
        std::vector<Perm> trans, trans_inv;    // per orbit position, when memo
    };

    std::size_t degree_;
    std::deque<Level> levels_;  // deque: extend() holds references across deeper sifts

    const Perm& label(const Level& lv, std::size_t l) const {
        return l % 2 ? lv.gen_inv[l / 2] : lv.gens[l / 2];
    }

    // Image of `point` under the inverse transversal element of `pos`.
    std::uint32_t inv_trans_image(const Level& lv, std::size_t pos, std::uint32_t point) const {
        if (lv.memo) return lv.trans_inv[pos][point];
        std::size_t p = pos;
        while (lv.parent[p] >= 0) {
            // label l and label l^1 are mutual inverses, so the inverse walk
            // applies the flipped labels from the node up to the root.
            point = label(lv, lv.via[p] ^ 1)[point];
            p = static_cast<std::size_t>(lv.parent[p]);
        }
        return point;
    }

    std::uint32_t trans_image(const Level& lv, std::size_t pos, std::uint32_t point) const {
        if (lv.memo) return lv.trans[pos][point];
        std::vector<std::size_t> path;
        for (std::size_t p = pos; lv.parent[p] >= 0; p = static_cast<std::size_t>(lv.parent[p]))
            path.push_back(lv.via[p]);
        for (std::size_t i = path.size(); i-- > 0;) point = label(lv, path[i])[point];
        return point;
    }

    void rebuild_orbit(Level& lv) {
        lv.orbit.clear();
        lv.pos.assign(degree_, -1);
        lv.parent.clear();
        lv.via.clear();
        lv.trans.clear();
        lv.trans_inv.clear();
        lv.orbit.push_back(static_cast<std::uint32_t>(lv.base));
        lv.pos[lv.base] = 0;
        lv.parent.push_back(-1);
        lv.via.push_back(0);
        for (std::size_t at = 0; at < lv.orbit.size(); ++at) {
            std::uint32_t x = lv.orbit[at];
            for (std::size_t l = 0; l < 2 * lv.gens.size(); ++l) {
                std::uint32_t y = label(lv, l)[x];
                if (lv.pos[y] < 0) {
                    lv.pos[y] = static_cast<std::int64_t>(lv.orbit.size());
                    lv.orbit.push_back(y);
                    lv.parent.push_back(static_cast<std::int64_t>(at));
                    lv.via.push_back(l);
                }
            }
        }
        lv.memo = lv.orbit.size() * degree_ <= kMemoEntryCap;
        if (lv.memo) {
            lv.trans.resize(lv.orbit.size());
            lv.trans_inv.resize(lv.orbit.size());
            Perm id(degree_);
            for (std::size_t i = 0; i < degree_; ++i) id[i] = static_cast<std::uint32_t>(i);
            lv.trans[0] = id;
            lv.trans_inv[0] = std::move(id);
            for (std::size_t p = 1; p < lv.orbit.size(); ++p) {
                const Perm& lab = label(lv, lv.via[p]);
                const Perm& up = lv.trans[static_cast<std::size_t>(lv.parent[p])];
                Perm t(degree_);
                for (std::size_t i = 0; i < degree_; ++i) t[i] = lab[up[i]];
                lv.trans_inv[p] = perm_inverse(t);
                lv.trans[p] = std::move(t);
            }
        }
    }

    // Strip g through levels i.. by transversal division; the residue is
    // identity exactly when g lies in the group the tail of the chain spans.
    Perm strip(std::size_t i, Perm g) const {
        for (; i < levels_.size(); ++i) {
            const Level& lv = levels_[i];
            std::uint32_t x = g[lv.base];
            if (x == lv.base) continue;
            if (lv.pos[x] < 0) return g;
            std::size_t pos = static_cast<std::size_t>(lv.pos[x]);
            Perm stripped(degree_);
            for (std::size_t p = 0; p < degree_; ++p)
                stripped[p] = inv_trans_image(lv, pos, g[p]);
            g = std::move(stripped);
            if (perm_is_identity(g)) return g;
        }
        return g;
    }

    /* A generator joins the level that produced it even when it fixes that
     * level's base: it can still extend the orbit through non-base points.
     * Residues of Schreier generators go to the next level down, which keeps
     * every level's list generating the full stabilizer above it. */
    void insert(std::size_t i, Perm g) {
        if (i == levels_.size()) {
            Level lv;
            lv.base = 0;
            while (g[lv.base] == lv.base) ++lv.base;  // smallest moved point
            levels_.push_back(std::move(lv));
        }
        Level& lv = levels_[i];  // deque: stable across deeper inserts
        lv.gen_inv.push_back(perm_inverse(g));
        lv.gens.push_back(std::move(g));
        rebuild_orbit(lv);
        // Re-verify every Schreier generator u_{s(x)}^-1 s u_x of this level.
        for (std::size_t at = 0; at < lv.orbit.size(); ++at) {
            std::uint32_t x = lv.orbit[at];
            for (std::size_t l = 0; l < 2 * lv.gens.size(); ++l) {
                const Perm& s = label(lv, l);
                std::size_t ypos = static_cast<std::size_t>(lv.pos[s[x]]);
                Perm w(degree_);
                bool trivial = true;
                for (std::size_t p = 0; p < degree_; ++p) {
                    w[p] = inv_trans_image(lv, ypos, s[trans_image(lv, at, static_cast<std::uint32_t>(p))]);
                    trivial = trivial && w[p] == p;
                }
                if (trivial) continue;
                Perm h = strip(i + 1, std::move(w));
                if (!perm_is_identity(h)) insert(i + 1, std::move(h));
            }
        }
    }
};

}  // namespace

BigUint level_quotient_order(const Automaton& a, std::size_t n, std::size_t level_cap) {
    if (!is_invertible(a))
        throw domain_error("not_invertible", "level quotients need an invertible automaton");
    auto total = level_size(a.alphabet_size, n, level_cap);
    if (!total) {
        std::ostringstream os;
        os << "level " << n << " has more than " << level_cap << " words";
        throw domain_error("level_cap", os.str());
    }
    StabChain chain(*total);
    for (std::size_t g : generator_states(a)) {
        Perm p(*total);
        for (std::size_t idx = 0; idx < *total; ++idx) {
            std::vector<std::size_t> w = decode_level_word(idx, a.alphabet_size, n);
            p[idx] = static_cast<std::uint32_t>(
                encode_level_word(act(a, {g}, w).output, a.alphabet_size));
        }
        chain.add(p);
    }
    return chain.order();
}

}  // namespace ssa
