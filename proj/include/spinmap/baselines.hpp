#pragma once

#include "spinmap/encoding.hpp"
#include "spinmap/trace.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace spinmap {

struct SaConfig {
  double t0 = 100.0;
  double t_final = 0.667;
  int n_annealing = 300;
  int n_sweep = 0;  // 0 resolves to 10 * L flips per temperature
  std::uint64_t seed = 0;
};

struct SqaConfig {
  double gamma0 = 100.0;
  double gamma_final = 0.667;
  int tau = 4;
  double pt_temperature = 0.0;  // 0 resolves to 1/tau, so tau * T = 1
  int n_annealing = 300;
  int n_sweep = 0;  // 0 resolves to 10 * L Monte Carlo steps per field value
  std::uint64_t seed = 0;
};

// Geometric decay t0 * (t_final/t0)^(k/(n-1)), endpoints exact.
double temperature_at(const SaConfig& cfg, int k);

// Linear ramp from gamma0 to gamma_final, endpoints exact.
double field_at(const SqaConfig& cfg, int k);

// J = -(tau T / 2) ln tanh(Gamma / (tau T)); positive, grows as the field
// falls.
double slice_coupling(double gamma, int tau, double t_sim);

// Cyclic stack of problem replicas. The effective energy is
//   sum_k penalty(slice k) - J * sum_k sum_i s_i^k s_i^(k+1)
// with slice tau coupled back to slice 1.
class SliceSystem {
 public:
  SliceSystem(const MappingCode& code, int tau, std::mt19937_64& gen);

  int tau() const { return static_cast<int>(slices_.size()); }
  int spin(int k, int p) const { return slices_[k].bits()[p] ? 1 : -1; }
  const DeltaTracker& slice(int k) const { return slices_[k]; }

  void set_coupling(double j) { coupling_ = j; }
  double coupling() const { return coupling_; }

  std::int64_t alignment() const;    // ordered cyclic neighbor sum
  double effective_energy() const;   // problem terms minus J * alignment

  double local_delta(int k, int p) const;
  void apply_local(int k, int p);
  // Flips site p in every slice: alignment terms cancel, only the problem
  // terms move.
  std::int64_t global_delta(int p) const;
  void apply_global(int p);

 private:
  std::vector<DeltaTracker> slices_;
  double coupling_ = 0.0;
};

// One fixed-temperature plateau of n single-flip Metropolis proposals
// (downhill always, uphill with probability e^(-dE/T)). on_step fires after
// every proposal with the tracker in its post-decision state. Returns the
// acceptance count.
int sa_sweep(DeltaTracker& tr, double temp, int n, std::mt19937_64& gen,
             const std::function<void(const DeltaTracker&)>& on_step = {});

RunTrace run_sa(const MappingCode& code, const SaConfig& cfg);
RunTrace run_pimc_sqa(const MappingCode& code, const SqaConfig& cfg);

}  // namespace spinmap
