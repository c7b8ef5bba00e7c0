#pragma once

#include "spinmap/encoding.hpp"
#include "spinmap/rbm.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

// Hot loops, each in a serial reference version and an OpenMP version.
// Every output element is written by exactly one thread and block partials
// are reduced in fixed block order, so the pair is bitwise identical for
// any thread count.
namespace spinmap::kernels {

// Penalty of each sample's bit image.
Eigen::VectorXd batch_penalties_serial(const MappingCode& code,
                                       const std::vector<SpinConfig>& samples);
Eigen::VectorXd batch_penalties(const MappingCode& code, const std::vector<SpinConfig>& samples);

// Row per sample, packed log-derivative layout.
Eigen::MatrixXd derivative_matrix_serial(const RbmParams& p,
                                         const std::vector<SpinConfig>& samples);
Eigen::MatrixXd derivative_matrix(const RbmParams& p, const std::vector<SpinConfig>& samples);

// F = Oc^T Ec / n for centered inputs.
Eigen::VectorXd sr_force_serial(const Eigen::MatrixXd& oc, const Eigen::VectorXd& ec);
Eigen::VectorXd sr_force(const Eigen::MatrixXd& oc, const Eigen::VectorXd& ec);

// S = Oc^T Oc / n.
Eigen::MatrixXd covariance_serial(const Eigen::MatrixXd& oc);
Eigen::MatrixXd covariance(const Eigen::MatrixXd& oc);

// w = Oc^T (Oc v) / n without forming S.
Eigen::VectorXd covariance_matvec_serial(const Eigen::MatrixXd& oc, const Eigen::VectorXd& v);
Eigen::VectorXd covariance_matvec(const Eigen::MatrixXd& oc, const Eigen::VectorXd& v);

// Full-enumeration diagnostics over all 2^L configurations. Guarded to
// L <= 24; larger codes must be sampled instead.
struct ExhaustiveSummary {
  std::int64_t min_penalty = 0;  // global optimum of the penalty
  double ground_mass = 0.0;      // psi^2 mass on minimum-penalty states
  double energy = 0.0;           // exact expectation of the penalty under psi^2
};
ExhaustiveSummary exhaustive_summary_serial(const RbmParams& p, const MappingCode& code);
ExhaustiveSummary exhaustive_summary(const RbmParams& p, const MappingCode& code);

}  // namespace spinmap::kernels
