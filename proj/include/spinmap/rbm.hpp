#pragma once

#include "spinmap/encoding.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>

namespace spinmap {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Real-parameter RBM amplitude over +-1 spins:
//   ln psi(s) = sum_i a_i s_i + sum_j [ln 2 + ln cosh(theta_j)],
//   theta_j = b_j + sum_i W_ij s_i.
// Packed parameter order: a (L), b (H), W row-major (L*H).
struct RbmParams {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> w;

  int visible() const { return static_cast<int>(a.size()); }
  int hidden() const { return static_cast<int>(b.size()); }
  int packed_size() const { return visible() + hidden() + visible() * hidden(); }
};

using ThetaCache = Eigen::VectorXd;

RbmParams init_params(int L, int H, double sigma, std::uint64_t seed);

// Overflow-safe ln cosh.
double ln_cosh(double x);

ThetaCache make_theta(const RbmParams& p, const SpinConfig& s);

double log_psi(const RbmParams& p, const SpinConfig& s);

// ln psi(s with site k flipped) - ln psi(s), O(H) via the cache.
double log_ratio_flip(const RbmParams& p, const SpinConfig& s, const ThetaCache& cache, int k);

// Negates s_k and keeps the cache consistent.
void apply_flip(const RbmParams& p, SpinConfig& s, ThetaCache& cache, int k);

// Packed [s_i | tanh(theta_j) | s_i tanh(theta_j)].
void log_derivatives(const RbmParams& p, const SpinConfig& s, const ThetaCache& cache,
                     Eigen::VectorXd& out);

void apply_update(RbmParams& p, const Eigen::VectorXd& delta);

Eigen::VectorXd pack_params(const RbmParams& p);
RbmParams unpack_params(int L, int H, const Eigen::VectorXd& v);

// Snapshot file: 8-value CSV header line
// (format version, L, H, seed, iteration, alpha, sigma, reserved)
// followed by the packed vector, one value per line.
void save_params(const std::string& path, const RbmParams& p, std::uint64_t seed,
                 std::int64_t iteration, double alpha, double sigma);
struct ParamSnapshot {
  RbmParams params;
  std::uint64_t seed = 0;
  std::int64_t iteration = 0;
  double alpha = 1.0;
  double sigma = 0.01;
};
ParamSnapshot load_params(const std::string& path);

}  // namespace spinmap
