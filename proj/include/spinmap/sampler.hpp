#pragma once

#include "spinmap/rbm.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace spinmap {

// One Markov chain over psi^2 with single-site flip proposals.
struct ChainState {
  SpinConfig spins;
  ThetaCache theta;
  std::mt19937_64 gen;
  std::uint64_t accepted = 0;
  std::uint64_t proposed = 0;

  // Uniform random start; stream derived from (master seed, chain index).
  static ChainState init(const RbmParams& p, std::uint64_t master_seed, std::uint64_t chain_index);

  // Rebuild the theta cache after a parameter update (spins are kept).
  void refresh(const RbmParams& p);
};

// One proposal: uniform random site, accept with min(1, exp(2*log_ratio)).
bool mh_step(ChainState& c, const RbmParams& p);

// burn_in steps discarded, then one record every `thin` steps (thin = 0
// records the current state untouched).
std::vector<SpinConfig> sample_batch(ChainState& c, const RbmParams& p, int n_samples, int thin,
                                     int burn_in);

// Fixed set of independent chains splitting each batch; outputs merged in
// chain-index order so results do not depend on scheduling.
class MultiChain {
 public:
  MultiChain(const RbmParams& p, int n_chains, std::uint64_t master_seed);

  // First sample of each chain's share is taken after `burn_in + thin` steps,
  // later ones every `thin`.
  std::vector<SpinConfig> sample(const RbmParams& p, int n_samples, int thin, int burn_in);

  void refresh(const RbmParams& p);
  int size() const { return static_cast<int>(chains_.size()); }
  const ChainState& chain(int i) const { return chains_[i]; }

 private:
  std::vector<ChainState> chains_;
};

}  // namespace spinmap
