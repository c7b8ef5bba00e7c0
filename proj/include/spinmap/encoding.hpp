#pragma once

#include "spinmap/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinmap {

using BitConfig = std::vector<std::uint8_t>;  // {0,1} per candidate pair
using SpinConfig = std::vector<std::int8_t>;  // {+1,-1}, x = (s+1)/2

// Degree-pruned candidate-pair set S = {(i,j) : deg1(i) = deg2(j)} in
// lexicographic (i,j) order, plus the 0/1 quadratic coefficient table
// Q[p][q] = (A1(i_p,i_q) - A2(j_p,j_q))^2 over S x S.
struct MappingCode {
  int n = 0;
  int L = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> index_of;               // n*n, -1 where pair not in S
  std::vector<std::vector<int>> row_of;    // code positions per G1 vertex
  std::vector<std::vector<int>> col_of;    // code positions per G2 vertex
  std::vector<std::vector<int>> q_rows;    // positions q with Q[p][q] = 1
  const Graph* g1 = nullptr;
  const Graph* g2 = nullptr;

  int index(int i, int j) const { return index_of[static_cast<std::size_t>(i) * n + j]; }
};

// Returns nullopt when the degree sequences (or vertex counts) differ:
// an immediate non-isomorphic verdict, the solver never runs.
std::optional<MappingCode> build_code(const Graph& g1, const Graph& g2);

// Row/column bijection penalty, Eq-5 style: every vertex of each graph must
// be used exactly once.
std::int64_t penalty_f1(const MappingCode& code, const BitConfig& x);

// Edge-consistency penalty: ordered double sum over assigned pairs of the
// 0/1 adjacency mismatch, diagonal included (it contributes 0).
std::int64_t penalty_f2(const MappingCode& code, const BitConfig& x);

std::int64_t penalty(const MappingCode& code, const BitConfig& x);

// Closed-form bound 2n^2(n-1) + 2n(n-1)^2 on the penalty of any config.
std::int64_t lambda_upper_bound(int n);

SpinConfig bits_to_spins(const BitConfig& x);
BitConfig spins_to_bits(const SpinConfig& s);

// Pairs with x = 1; to[] holds the last assignment per vertex, completeness
// tells whether the bits form a bijection.
VertexMapping decode_mapping(const MappingCode& code, const BitConfig& x);

// Incremental single-flip evaluation: O(1) delta query, O(L) commit.
// Maintains row/column sums, the interaction field h_p = sum_q Q[p][q] x_q,
// and the current penalty split.
class DeltaTracker {
 public:
  DeltaTracker(const MappingCode& code, BitConfig x);

  std::int64_t flip_delta(int p) const;  // penalty(x^p) - penalty(x)
  void flip(int p);                      // commit the flip

  std::int64_t energy() const { return f1_ + f2_; }
  const BitConfig& bits() const { return x_; }

 private:
  const MappingCode* code_;
  BitConfig x_;
  std::vector<int> row_sum_, col_sum_;
  std::vector<std::int64_t> h_;
  std::int64_t f1_ = 0, f2_ = 0;
};

// Debug dump of the nonzero Q entries as "row,col,coefficient" lines.
std::string dump_q_csv(const MappingCode& code);

}  // namespace spinmap
