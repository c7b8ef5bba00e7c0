#pragma once

#include "spinmap/graph.hpp"

#include <cstdint>
#include <utility>

namespace spinmap {

Graph path_graph(int n);
Graph cycle_graph(int n);

// 4-vertex worked example: theta-style pair, degree sequence [3,2,2,1].
// Candidate roster pruned by degree is exactly
// (0,1) (1,0) (2,2) (2,3) (3,2) (3,3), six bits, and {0<->1, 2<->3} is a
// valid mapping, as is the one fixing 2 and 3.
std::pair<Graph, Graph> four_vertex_pair();

// 5-cycle vs pentagram, isomorphic 2-regular pair.
std::pair<Graph, Graph> five_cycle_pair();

// 7-cycle plus one chord; chord span 2 contains a triangle, span 3 does not,
// so the two are non-isomorphic with equal degree sequence [3,3,2,2,2,2,2].
std::pair<Graph, Graph> seven_vertex_noniso_pair();

// Degree multiset {1,2,2,2,2,3}: 5-cycle with a pendant vertex, paired with
// a relabeled copy. 18 candidate bits.
std::pair<Graph, Graph> six_vertex_pair();

// 3-cube with one edge removed, paired with a relabeled copy. Degree classes
// 6x3 + 2x2 give 40 candidate bits.
std::pair<Graph, Graph> cube_minus_edge_pair();

Graph petersen_graph();
Graph pentagonal_prism_graph();

// Shrikhande graph vs 4x4 rook graph: both strongly regular (16,6,2,2),
// non-isomorphic. Stress input only.
std::pair<Graph, Graph> srg16_pair();

// Erdos-Renyi G(n, 1/2) from a dedicated RNG stream.
Graph random_graph(int n, std::uint64_t seed);

// Image of g under a uniformly random permutation drawn from seed.
Graph random_relabel(const Graph& g, std::uint64_t seed);

}  // namespace spinmap
