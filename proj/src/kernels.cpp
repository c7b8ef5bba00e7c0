#include "spinmap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinmap::kernels {

namespace {

constexpr int kEnumBlockBits = 12;  // 4096 states per block
constexpr int kEnumMaxBits = 24;

std::int64_t sample_penalty(const MappingCode& code, const SpinConfig& s) {
  return penalty(code, spins_to_bits(s));
}

struct BlockMoments {
  double max_log = -std::numeric_limits<double>::infinity();
  std::int64_t min_penalty = std::numeric_limits<std::int64_t>::max();
};

struct BlockSums {
  double z = 0.0;       // sum exp(2 ln psi - shift)
  double ze = 0.0;      // penalty-weighted sum
  double ground = 0.0;  // sum restricted to min-penalty states
};

void enum_state(const MappingCode& code, std::uint32_t m, SpinConfig& s, BitConfig& x) {
  const int L = code.L;
  for (int k = 0; k < L; ++k) {
    x[k] = static_cast<std::uint8_t>((m >> k) & 1u);
    s[k] = x[k] ? 1 : -1;
  }
}

BlockMoments block_moments(const RbmParams& p, const MappingCode& code, std::uint32_t first,
                           std::uint32_t last) {
  BlockMoments out;
  SpinConfig s(code.L);
  BitConfig x(code.L);
  for (std::uint32_t m = first; m < last; ++m) {
    enum_state(code, m, s, x);
    out.max_log = std::max(out.max_log, 2.0 * log_psi(p, s));
    out.min_penalty = std::min(out.min_penalty, penalty(code, x));
  }
  return out;
}

BlockSums block_sums(const RbmParams& p, const MappingCode& code, std::uint32_t first,
                     std::uint32_t last, double shift, std::int64_t min_penalty) {
  BlockSums out;
  SpinConfig s(code.L);
  BitConfig x(code.L);
  for (std::uint32_t m = first; m < last; ++m) {
    enum_state(code, m, s, x);
    const double w = std::exp(2.0 * log_psi(p, s) - shift);
    const std::int64_t e = penalty(code, x);
    out.z += w;
    out.ze += w * static_cast<double>(e);
    if (e == min_penalty) out.ground += w;
  }
  return out;
}

ExhaustiveSummary reduce_summary(const std::vector<BlockMoments>& moments,
                                 const std::vector<BlockSums>& sums) {
  BlockMoments m;
  for (const BlockMoments& b : moments) {
    m.max_log = std::max(m.max_log, b.max_log);
    m.min_penalty = std::min(m.min_penalty, b.min_penalty);
  }
  BlockSums s;
  for (const BlockSums& b : sums) {
    s.z += b.z;
    s.ze += b.ze;
    s.ground += b.ground;
  }
  ExhaustiveSummary out;
  out.min_penalty = m.min_penalty;
  out.ground_mass = s.ground / s.z;
  out.energy = s.ze / s.z;
  return out;
}

void check_enum_size(const MappingCode& code) {
  if (code.L > kEnumMaxBits)
    throw std::invalid_argument("exhaustive summary limited to 24 code bits");
}

}  // namespace

Eigen::VectorXd batch_penalties_serial(const MappingCode& code,
                                       const std::vector<SpinConfig>& samples) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(samples.size());
  Eigen::VectorXd out(n);
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = static_cast<double>(sample_penalty(code, samples[i]));
  return out;
}

Eigen::VectorXd batch_penalties(const MappingCode& code, const std::vector<SpinConfig>& samples) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(samples.size());
  Eigen::VectorXd out(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = static_cast<double>(sample_penalty(code, samples[i]));
  return out;
}

Eigen::MatrixXd derivative_matrix_serial(const RbmParams& p,
                                         const std::vector<SpinConfig>& samples) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(samples.size());
  Eigen::MatrixXd out(n, p.packed_size());
  Eigen::VectorXd row(p.packed_size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const ThetaCache theta = make_theta(p, samples[i]);
    log_derivatives(p, samples[i], theta, row);
    out.row(i) = row;
  }
  return out;
}

Eigen::MatrixXd derivative_matrix(const RbmParams& p, const std::vector<SpinConfig>& samples) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(samples.size());
  Eigen::MatrixXd out(n, p.packed_size());
#pragma omp parallel
  {
    Eigen::VectorXd row(p.packed_size());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const ThetaCache theta = make_theta(p, samples[i]);
      log_derivatives(p, samples[i], theta, row);
      out.row(i) = row;
    }
  }
  return out;
}

Eigen::VectorXd sr_force_serial(const Eigen::MatrixXd& oc, const Eigen::VectorXd& ec) {
  const std::ptrdiff_t cols = oc.cols();
  Eigen::VectorXd out(cols);
  for (std::ptrdiff_t j = 0; j < cols; ++j) out[j] = oc.col(j).dot(ec) / oc.rows();
  return out;
}

Eigen::VectorXd sr_force(const Eigen::MatrixXd& oc, const Eigen::VectorXd& ec) {
  const std::ptrdiff_t cols = oc.cols();
  Eigen::VectorXd out(cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < cols; ++j) out[j] = oc.col(j).dot(ec) / oc.rows();
  return out;
}

Eigen::MatrixXd covariance_serial(const Eigen::MatrixXd& oc) {
  const std::ptrdiff_t cols = oc.cols();
  Eigen::MatrixXd s(cols, cols);
  for (std::ptrdiff_t j = 0; j < cols; ++j)
    s.col(j).noalias() = oc.transpose() * oc.col(j) / oc.rows();
  return s;
}

Eigen::MatrixXd covariance(const Eigen::MatrixXd& oc) {
  const std::ptrdiff_t cols = oc.cols();
  Eigen::MatrixXd s(cols, cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < cols; ++j)
    s.col(j).noalias() = oc.transpose() * oc.col(j) / oc.rows();
  return s;
}

Eigen::VectorXd covariance_matvec_serial(const Eigen::MatrixXd& oc, const Eigen::VectorXd& v) {
  const std::ptrdiff_t rows = oc.rows();
  const std::ptrdiff_t cols = oc.cols();
  Eigen::VectorXd u(rows);
  for (std::ptrdiff_t i = 0; i < rows; ++i) u[i] = oc.row(i).dot(v);
  Eigen::VectorXd w(cols);
  for (std::ptrdiff_t j = 0; j < cols; ++j) w[j] = oc.col(j).dot(u) / rows;
  return w;
}

Eigen::VectorXd covariance_matvec(const Eigen::MatrixXd& oc, const Eigen::VectorXd& v) {
  const std::ptrdiff_t rows = oc.rows();
  const std::ptrdiff_t cols = oc.cols();
  Eigen::VectorXd u(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) u[i] = oc.row(i).dot(v);
  Eigen::VectorXd w(cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < cols; ++j) w[j] = oc.col(j).dot(u) / rows;
  return w;
}

ExhaustiveSummary exhaustive_summary_serial(const RbmParams& p, const MappingCode& code) {
  check_enum_size(code);
  const std::uint64_t states = std::uint64_t{1} << code.L;
  const std::uint64_t block = std::uint64_t{1} << kEnumBlockBits;
  const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>((states + block - 1) / block);
  std::vector<BlockMoments> moments(blocks);
  std::vector<BlockSums> sums(blocks);
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const auto first = static_cast<std::uint32_t>(b * block);
    const auto last = static_cast<std::uint32_t>(std::min<std::uint64_t>(states, (b + 1) * block));
    moments[b] = block_moments(p, code, first, last);
  }
  BlockMoments global;
  for (const BlockMoments& b : moments) {
    global.max_log = std::max(global.max_log, b.max_log);
    global.min_penalty = std::min(global.min_penalty, b.min_penalty);
  }
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const auto first = static_cast<std::uint32_t>(b * block);
    const auto last = static_cast<std::uint32_t>(std::min<std::uint64_t>(states, (b + 1) * block));
    sums[b] = block_sums(p, code, first, last, global.max_log, global.min_penalty);
  }
  return reduce_summary(moments, sums);
}

ExhaustiveSummary exhaustive_summary(const RbmParams& p, const MappingCode& code) {
  check_enum_size(code);
  const std::uint64_t states = std::uint64_t{1} << code.L;
  const std::uint64_t block = std::uint64_t{1} << kEnumBlockBits;
  const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>((states + block - 1) / block);
  std::vector<BlockMoments> moments(blocks);
  std::vector<BlockSums> sums(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const auto first = static_cast<std::uint32_t>(b * block);
    const auto last = static_cast<std::uint32_t>(std::min<std::uint64_t>(states, (b + 1) * block));
    moments[b] = block_moments(p, code, first, last);
  }
  BlockMoments global;
  for (const BlockMoments& b : moments) {
    global.max_log = std::max(global.max_log, b.max_log);
    global.min_penalty = std::min(global.min_penalty, b.min_penalty);
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const auto first = static_cast<std::uint32_t>(b * block);
    const auto last = static_cast<std::uint32_t>(std::min<std::uint64_t>(states, (b + 1) * block));
    sums[b] = block_sums(p, code, first, last, global.max_log, global.min_penalty);
  }
  return reduce_summary(moments, sums);
}

}  // namespace spinmap::kernels
