#pragma once

#include "spinmap/encoding.hpp"
#include "spinmap/kernels.hpp"
#include "spinmap/rbm.hpp"
#include "spinmap/trace.hpp"

#include <cstdint>
#include <vector>

namespace spinmap {

struct EnergyStats {
  double mean = 0.0;
  double variance = 0.0;  // population variance
  std::int64_t min_energy = 0;
  int hit_count = 0;  // penalty-0 samples in the batch
  int n = 0;
};

struct VmcConfig {
  int n_iterations = 300;
  int samples_per_iter = 0;     // 0 resolves to 10 * L
  double learning_rate = 0.05;  // default kept inside [0.01, 0.1]
  double sr_epsilon = 1e-3;     // relative shift, scaled by mean diag of S
  int convergence_window = 10;
  std::uint64_t seed = 0;
  double alpha = 1.0;   // hidden units per visible unit
  double sigma = 0.01;  // parameter init spread
  int n_chains = 0;     // 0 resolves to min(8, samples)
  int thin = 0;         // 0 resolves to L proposals between records
  int burn_in = -1;     // -1 resolves to 10 * L, spent at iteration 0 only
  bool early_stop_on_hit = false;
  int sr_dense_max_dim = 512;  // larger packed sizes switch to matrix-free CG
};

// Config with the size-dependent defaults resolved for code length L.
struct VmcPlan {
  int samples = 0;
  int chains = 0;
  int thin = 0;
  int burn_in0 = 0;
  int hidden = 0;
};
VmcPlan plan_vmc(const VmcConfig& cfg, int L);

// The Hamiltonian is diagonal, so the local energy of a sample is just its
// penalty.
std::int64_t local_energy(const MappingCode& code, const SpinConfig& s);

EnergyStats batch_stats(const MappingCode& code, const std::vector<SpinConfig>& samples);

// Stochastic reconfiguration step: solve (S + eps*I) delta = -eta * F with
// F_k = <E O_k> - <E><O_k> and S the centered derivative Gram matrix.
Eigen::VectorXd sr_update(const RbmParams& p, const std::vector<SpinConfig>& samples,
                          const MappingCode& code, const VmcConfig& cfg);

// True when the trailing window shows either an exact zero-variance zero-mean
// plateau (ground state) or a stable integer floor >= 1 with the mean within
// 0.5 of it (non-isomorphism evidence).
bool converged(const std::vector<EnergyStats>& history, const VmcConfig& cfg);

struct VmcResult {
  RunTrace trace;
  RbmParams params;  // state after the last update
};

VmcResult run_rbm_sqa(const Graph& g1, const Graph& g2, const VmcConfig& cfg);

}  // namespace spinmap
