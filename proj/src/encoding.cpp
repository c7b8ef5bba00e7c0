#include "spinmap/encoding.hpp"

#include <sstream>

namespace spinmap {

std::optional<MappingCode> build_code(const Graph& g1, const Graph& g2) {
  if (g1.n != g2.n) return std::nullopt;
  if (degree_sequence(g1) != degree_sequence(g2)) return std::nullopt;

  MappingCode code;
  code.n = g1.n;
  code.g1 = &g1;
  code.g2 = &g2;
  code.index_of.assign(static_cast<std::size_t>(g1.n) * g1.n, -1);
  code.row_of.resize(g1.n);
  code.col_of.resize(g1.n);
  for (int i = 0; i < g1.n; ++i)
    for (int j = 0; j < g2.n; ++j)
      if (g1.deg[i] == g2.deg[j]) {
        const int k = static_cast<int>(code.pairs.size());
        code.pairs.emplace_back(i, j);
        code.index_of[static_cast<std::size_t>(i) * g1.n + j] = k;
        code.row_of[i].push_back(k);
        code.col_of[j].push_back(k);
      }
  code.L = static_cast<int>(code.pairs.size());

  code.q_rows.resize(code.L);
  for (int p = 0; p < code.L; ++p) {
    auto [i, j] = code.pairs[p];
    for (int q = 0; q < code.L; ++q) {
      auto [k, l] = code.pairs[q];
      if (g1.adjacent(i, k) != g2.adjacent(j, l)) code.q_rows[p].push_back(q);
    }
  }
  return code;
}

namespace {

void check_len(const MappingCode& code, std::size_t len) {
  if (static_cast<int>(len) != code.L)
    throw std::invalid_argument("encoding: config length does not match code");
}

}  // namespace

std::int64_t penalty_f1(const MappingCode& code, const BitConfig& x) {
  check_len(code, x.size());
  std::int64_t f1 = 0;
  for (int i = 0; i < code.n; ++i) {
    std::int64_t r = 0;
    for (int k : code.row_of[i]) r += x[k];
    f1 += (r - 1) * (r - 1);
  }
  for (int j = 0; j < code.n; ++j) {
    std::int64_t c = 0;
    for (int k : code.col_of[j]) c += x[k];
    f1 += (c - 1) * (c - 1);
  }
  return f1;
}

std::int64_t penalty_f2(const MappingCode& code, const BitConfig& x) {
  check_len(code, x.size());
  std::int64_t f2 = 0;
  for (int p = 0; p < code.L; ++p) {
    if (!x[p]) continue;
    for (int q : code.q_rows[p]) f2 += x[q];
  }
  return f2;
}

std::int64_t penalty(const MappingCode& code, const BitConfig& x) {
  return penalty_f1(code, x) + penalty_f2(code, x);
}

std::int64_t lambda_upper_bound(int n) {
  if (n < 1) throw std::invalid_argument("lambda_upper_bound: n >= 1 required");
  const std::int64_t nn = n;
  return 2 * nn * nn * (nn - 1) + 2 * nn * (nn - 1) * (nn - 1);
}

SpinConfig bits_to_spins(const BitConfig& x) {
  SpinConfig s(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) s[k] = x[k] ? 1 : -1;
  return s;
}

BitConfig spins_to_bits(const SpinConfig& s) {
  BitConfig x(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) x[k] = s[k] > 0 ? 1 : 0;
  return x;
}

VertexMapping decode_mapping(const MappingCode& code, const BitConfig& x) {
  check_len(code, x.size());
  VertexMapping m;
  m.to.assign(code.n, -1);
  bool clean = true;
  for (int k = 0; k < code.L; ++k) {
    if (!x[k]) continue;
    auto [i, j] = code.pairs[k];
    if (m.to[i] != -1) clean = false;  // double assignment; keep the last
    m.to[i] = j;
  }
  (void)clean;
  return m;
}

DeltaTracker::DeltaTracker(const MappingCode& code, BitConfig x)
    : code_(&code), x_(std::move(x)) {
  check_len(code, x_.size());
  row_sum_.assign(code.n, 0);
  col_sum_.assign(code.n, 0);
  h_.assign(code.L, 0);
  for (int k = 0; k < code.L; ++k) {
    if (!x_[k]) continue;
    auto [i, j] = code.pairs[k];
    ++row_sum_[i];
    ++col_sum_[j];
    for (int q : code.q_rows[k]) ++h_[q];
  }
  f1_ = penalty_f1(code, x_);
  f2_ = 0;
  for (int k = 0; k < code.L; ++k)
    if (x_[k]) f2_ += h_[k];
}

std::int64_t DeltaTracker::flip_delta(int p) const {
  const auto [i, j] = code_->pairs[p];
  const int sgn = x_[p] ? -1 : 1;
  const std::int64_t r = row_sum_[i], c = col_sum_[j];
  // (r+sgn-1)^2 - (r-1)^2 collapses to sgn*(2(r-1)) + 1.
  const std::int64_t d_row = sgn * 2 * (r - 1) + 1;
  const std::int64_t d_col = sgn * 2 * (c - 1) + 1;
  return d_row + d_col + 2 * sgn * h_[p];
}

void DeltaTracker::flip(int p) {
  const auto [i, j] = code_->pairs[p];
  const int sgn = x_[p] ? -1 : 1;
  const std::int64_t r = row_sum_[i], c = col_sum_[j];
  f1_ += sgn * 2 * (r - 1) + 1 + sgn * 2 * (c - 1) + 1;
  f2_ += 2 * sgn * h_[p];
  row_sum_[i] += sgn;
  col_sum_[j] += sgn;
  for (int q : code_->q_rows[p]) h_[q] += sgn;
  x_[p] ^= 1;
}

std::string dump_q_csv(const MappingCode& code) {
  std::ostringstream out;
  out << "row,col,coefficient\n";
  for (int p = 0; p < code.L; ++p)
    for (int q : code.q_rows[p]) out << p << ',' << q << ",1\n";
  return out.str();
}

}  // namespace spinmap
