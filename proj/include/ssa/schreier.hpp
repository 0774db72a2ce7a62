/* schreier.hpp -- generator-action graphs on tree levels and their tilings
 *
 * The level-n Schreier graph has one vertex per length-n word and exactly one
 * edge per (vertex, generator), the generator being every non-identity state.
 * The same graph can be read off the n-th power of the dual automaton; the
 * covering and projection maps relate consecutive levels.  Tiles partition a
 * level by word suffixes: edges whose generator restricts nontrivially to the
 * prefix are "critical" and induce the adjacency structure between tiles.
 */

#ifndef SSA_SCHREIER_HPP
#define SSA_SCHREIER_HPP

#include <cstddef>
#include <vector>

#include "ssa/automaton.hpp"

namespace ssa {

struct SchreierLevel {
    std::size_t level = 0;
    // Vertices are the length-`level` words in lexicographic order (named via
    // word_key); edges carry the acting state's name, vertices outer,
    // generators inner.
    LabeledGraph graph;
};

SchreierLevel schreier_graph(const Automaton& a, std::size_t level,
                             std::size_t level_cap = 100000);

/* The same vertex/edge structure obtained from the n-th power of the dual:
 * power states are letter words (left-major pairing, so indices agree with
 * lexicographic word order), edges are relabeled to the acting state's name,
 * and the designated identity's edges are dropped. */
LabeledGraph dual_power_graph(const Automaton& a, std::size_t n,
                              std::size_t level_cap = 100000);

/* Graph morphism from level+1 onto level that forgets the last letter.  Every
 * edge maps label-preservingly: the generator edge at u·a projects to the
 * generator edge at u. */
struct CoveringMap {
    std::size_t from_level = 0;
    std::size_t to_level = 0;
    std::vector<std::size_t> vertex_map;  // level+1 word index -> level word index
};

CoveringMap covering_map(const Automaton& a, std::size_t level,
                         std::size_t level_cap = 100000);

/* Graph morphism from level+1 onto level that forgets the first letter.  The
 * generator edge labeled q at a1·w maps to the edge labeled tau(a1,q) at w;
 * when that restriction is the designated identity the image degenerates to
 * the vertex itself (the target graph has no identity edges). */
struct ProjectionMap {
    std::size_t from_level = 0;
    std::size_t to_level = 0;
    std::vector<std::size_t> vertex_map;
    // Indexed [vertex][generator position]; generators in state order.
    std::vector<std::vector<std::size_t>> edge_label;  // restricted state index
    std::vector<std::vector<char>> degenerate;         // restricted to the identity
};

ProjectionMap projection_map(const Automaton& a, std::size_t level,
                             std::size_t level_cap = 100000);

/* Partition of the length-`level` words by their last `suffix_depth` letters.
 * The generator edge at a vertex is critical when the generator's restriction
 * to the vertex's prefix does not act as the identity: only such edges can
 * move the suffix, i.e. leave the tile. */
struct TilePartition {
    std::size_t level = 0;
    std::size_t suffix_depth = 0;
    std::vector<std::size_t> class_of;              // vertex -> suffix word index
    std::vector<std::vector<std::size_t>> classes;  // suffix word index -> vertices
    std::vector<std::vector<char>> critical;        // [vertex][generator position]
};

TilePartition tile_partition(const Automaton& a, std::size_t level, std::size_t suffix_depth,
                             std::size_t level_cap = 100000);

/* Tile-level quotient: one vertex per suffix class; every critical edge at
 * u·w labeled q yields an edge class(w) -> class(q|_u (w)) labeled by the
 * state q|_u, with duplicate triples collapsed. */
LabeledGraph tile_adjacency(const Automaton& a, std::size_t level, std::size_t suffix_depth,
                            std::size_t level_cap = 100000);

struct TileConnectivity {
    // Connected components of each suffix class under non-critical edges.
    std::vector<std::size_t> components;
    bool all_connected = false;
};

TileConnectivity tile_connectivity(const Automaton& a, std::size_t level,
                                   std::size_t suffix_depth, std::size_t level_cap = 100000);

/* Schreier graph restricted to one orbit: vertices are the words reachable
 * from `start` under the generators and their inverses, in BFS discovery
 * order; edges as in schreier_graph. */
LabeledGraph orbit_schreier(const Automaton& a, const std::vector<std::size_t>& start,
                            std::size_t level_cap = 100000);

}  // namespace ssa

#endif
