/* schreier.cpp -- level graphs, dual powers, coverings, tiles, orbits
 *
 * Level words are encoded as base-k indices with the first letter most
 * significant, so index order is lexicographic order and dropping the last
 * letter is division while dropping the first is a remainder.
 */

#include "ssa/schreier.hpp"

#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "ssa/analysis.hpp"
#include "ssa/group_word.hpp"

namespace ssa {
namespace {

std::size_t checked_level_size(std::size_t k, std::size_t n, std::size_t cap) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (k != 0 && total > cap / k) total = cap + 1;
        else total *= k;
        if (total > cap) {
            std::ostringstream os;
            os << "level " << n << " has more than " << cap << " words";
            throw domain_error("level_cap", os.str());
        }
    }
    return total;
}

std::vector<std::size_t> decode_word(std::size_t idx, std::size_t k, std::size_t n) {
    std::vector<std::size_t> w(n);
    for (std::size_t i = n; i-- > 0;) {
        w[i] = idx % k;
        idx /= k;
    }
    return w;
}

std::size_t encode_word(const std::vector<std::size_t>& w, std::size_t k) {
    std::size_t idx = 0;
    for (std::size_t a : w) idx = idx * k + a;
    return idx;
}

// State reached by running `q` down the letter word `u`.
std::size_t restrict_state(const Automaton& a, std::size_t q, const std::vector<std::size_t>& u) {
    for (std::size_t x : u) q = a.tau[x][q];
    return q;
}

std::vector<std::string> level_vertex_names(const Automaton& a, std::size_t n,
                                            std::size_t total) {
    std::vector<std::string> names;
    names.reserve(total);
    for (std::size_t v = 0; v < total; ++v)
        names.push_back(word_key(decode_word(v, a.alphabet_size, n), a.alphabet_size));
    return names;
}

}  // namespace

SchreierLevel schreier_graph(const Automaton& a, std::size_t level, std::size_t level_cap) {
    const std::size_t k = a.alphabet_size;
    const std::size_t total = checked_level_size(k, level, level_cap);
    SchreierLevel out;
    out.level = level;
    out.graph.vertices = level_vertex_names(a, level, total);
    for (std::size_t v = 0; v < total; ++v) {
        std::vector<std::size_t> w = decode_word(v, k, level);
        for (std::size_t g : generator_states(a)) {
            std::size_t img = encode_word(act(a, {g}, w).output, k);
            out.graph.edges.push_back({v, img, a.states[g]});
        }
    }
    return out;
}

LabeledGraph dual_power_graph(const Automaton& a, std::size_t n, std::size_t level_cap) {
    const std::size_t total = checked_level_size(a.alphabet_size, n, level_cap);
    Automaton p = power(dual(a), n);
    // Power states are letter words with the first letter most significant, so
    // state index == lexicographic word index; rename accordingly.
    LabeledGraph g;
    g.vertices = level_vertex_names(a, n, total);
    for (std::size_t v = 0; v < total; ++v)
        for (std::size_t q = 0; q < a.state_count(); ++q) {
            if (a.identity && *a.identity == q) continue;
            g.edges.push_back({v, p.tau[q][v], a.states[q]});
        }
    return g;
}

CoveringMap covering_map(const Automaton& a, std::size_t level, std::size_t level_cap) {
    const std::size_t k = a.alphabet_size;
    const std::size_t total = checked_level_size(k, level + 1, level_cap);
    CoveringMap m;
    m.from_level = level + 1;
    m.to_level = level;
    m.vertex_map.resize(total);
    for (std::size_t v = 0; v < total; ++v) m.vertex_map[v] = v / k;
    return m;
}

ProjectionMap projection_map(const Automaton& a, std::size_t level, std::size_t level_cap) {
    const std::size_t k = a.alphabet_size;
    const std::size_t total = checked_level_size(k, level + 1, level_cap);
    const std::size_t below = total / k;
    std::vector<std::size_t> gens = generator_states(a);
    ProjectionMap m;
    m.from_level = level + 1;
    m.to_level = level;
    m.vertex_map.resize(total);
    m.edge_label.assign(total, std::vector<std::size_t>(gens.size(), 0));
    m.degenerate.assign(total, std::vector<char>(gens.size(), 0));
    for (std::size_t v = 0; v < total; ++v) {
        std::size_t first = v / below;
        m.vertex_map[v] = v % below;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            std::size_t r = a.tau[first][gens[gi]];
            m.edge_label[v][gi] = r;
            m.degenerate[v][gi] = a.identity && *a.identity == r;
        }
    }
    return m;
}

TilePartition tile_partition(const Automaton& a, std::size_t level, std::size_t suffix_depth,
                             std::size_t level_cap) {
    if (suffix_depth > level)
        throw domain_error("bad_depth", "suffix depth exceeds the level");
    const std::size_t k = a.alphabet_size;
    const std::size_t total = checked_level_size(k, level, level_cap);
    const std::size_t suffixes = checked_level_size(k, suffix_depth, level_cap);
    std::vector<std::size_t> gens = generator_states(a);

    GroupOps ops(a);
    std::vector<char> idlike(a.state_count());
    for (std::size_t q = 0; q < a.state_count(); ++q) idlike[q] = ops.equals({{q, 1}}, {});

    TilePartition t;
    t.level = level;
    t.suffix_depth = suffix_depth;
    t.class_of.resize(total);
    t.classes.assign(suffixes, {});
    t.critical.assign(total, std::vector<char>(gens.size(), 0));
    for (std::size_t v = 0; v < total; ++v) {
        t.class_of[v] = v % suffixes;
        t.classes[v % suffixes].push_back(v);
        std::vector<std::size_t> prefix = decode_word(v / suffixes, k, level - suffix_depth);
        for (std::size_t gi = 0; gi < gens.size(); ++gi)
            t.critical[v][gi] = !idlike[restrict_state(a, gens[gi], prefix)];
    }
    return t;
}

LabeledGraph tile_adjacency(const Automaton& a, std::size_t level, std::size_t suffix_depth,
                            std::size_t level_cap) {
    const std::size_t k = a.alphabet_size;
    TilePartition t = tile_partition(a, level, suffix_depth, level_cap);
    const std::size_t suffixes = t.classes.size();
    std::vector<std::size_t> gens = generator_states(a);

    LabeledGraph g;
    g.vertices = level_vertex_names(a, suffix_depth, suffixes);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, char> seen;
    for (std::size_t v = 0; v < t.class_of.size(); ++v) {
        std::vector<std::size_t> prefix = decode_word(v / suffixes, k, level - suffix_depth);
        std::vector<std::size_t> suffix = decode_word(v % suffixes, k, suffix_depth);
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            if (!t.critical[v][gi]) continue;
            std::size_t r = restrict_state(a, gens[gi], prefix);
            std::size_t to = encode_word(act(a, {r}, suffix).output, k);
            if (seen.emplace(std::make_tuple(v % suffixes, to, r), 1).second)
                g.edges.push_back({v % suffixes, to, a.states[r]});
        }
    }
    return g;
}

TileConnectivity tile_connectivity(const Automaton& a, std::size_t level,
                                   std::size_t suffix_depth, std::size_t level_cap) {
    const std::size_t k = a.alphabet_size;
    TilePartition t = tile_partition(a, level, suffix_depth, level_cap);
    std::vector<std::size_t> gens = generator_states(a);

    std::vector<std::size_t> parent(t.class_of.size());
    for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (std::size_t v = 0; v < t.class_of.size(); ++v) {
        std::vector<std::size_t> w = decode_word(v, k, level);
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            if (t.critical[v][gi]) continue;  // non-critical edges stay inside the tile
            std::size_t img = encode_word(act(a, {gens[gi]}, w).output, k);
            std::size_t ra = find(v), rb = find(img);
            if (ra != rb) parent[rb] = ra;
        }
    }
    TileConnectivity out;
    out.components.assign(t.classes.size(), 0);
    for (std::size_t c = 0; c < t.classes.size(); ++c)
        for (std::size_t v : t.classes[c])
            if (find(v) == v) ++out.components[c];
    out.all_connected = true;
    for (std::size_t n : out.components) out.all_connected = out.all_connected && n == 1;
    return out;
}

LabeledGraph orbit_schreier(const Automaton& a, const std::vector<std::size_t>& start,
                            std::size_t level_cap) {
    const std::size_t k = a.alphabet_size;
    checked_level_size(k, start.size(), level_cap);
    for (std::size_t x : start)
        if (x >= k) throw domain_error("bad_letter", "letter out of range in start word");
    GroupOps ops(a);
    std::vector<std::size_t> gens = generator_states(a);

    std::unordered_map<std::size_t, std::size_t> index;  // word index -> vertex position
    std::vector<std::size_t> words;                      // encoded, discovery order
    std::queue<std::size_t> bfs;
    std::size_t s0 = encode_word(start, k);
    index.emplace(s0, 0);
    words.push_back(s0);
    bfs.push(s0);
    while (!bfs.empty()) {
        std::size_t v = bfs.front();
        bfs.pop();
        std::vector<std::size_t> w = decode_word(v, k, start.size());
        for (std::size_t g : gens)
            for (int sign : {1, -1}) {
                std::size_t img = encode_word(ops.apply({{g, sign}}, w), k);
                if (index.emplace(img, words.size()).second) {
                    words.push_back(img);
                    bfs.push(img);
                }
            }
    }

    LabeledGraph g;
    for (std::size_t v : words)
        g.vertices.push_back(word_key(decode_word(v, k, start.size()), k));
    for (std::size_t at = 0; at < words.size(); ++at) {
        std::vector<std::size_t> w = decode_word(words[at], k, start.size());
        for (std::size_t gidx : gens) {
            std::size_t img = encode_word(act(a, {gidx}, w).output, k);
            g.edges.push_back({at, index.at(img), a.states[gidx]});
        }
    }
    return g;
}

}  // namespace ssa
