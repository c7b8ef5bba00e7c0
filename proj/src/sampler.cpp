#include "spinmap/sampler.hpp"

#include "spinmap/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmap {

ChainState ChainState::init(const RbmParams& p, std::uint64_t master_seed,
                            std::uint64_t chain_index) {
  ChainState c;
  c.gen = rng::engine(master_seed, 0xC0 + chain_index);
  c.spins.resize(p.visible());
  for (auto& s : c.spins) s = (c.gen() & 1) ? 1 : -1;
  c.theta = make_theta(p, c.spins);
  return c;
}

void ChainState::refresh(const RbmParams& p) { theta = make_theta(p, spins); }

bool mh_step(ChainState& c, const RbmParams& p) {
  const int k = rng::uniform_int(c.gen, p.visible());
  const double log_ratio = log_ratio_flip(p, c.spins, c.theta, k);
  ++c.proposed;
  // Target is psi^2, so the acceptance ratio is exp(2 * log amplitude ratio).
  bool accept = log_ratio >= 0.0;
  if (!accept) accept = rng::uniform01(c.gen) < std::exp(2.0 * log_ratio);
  if (accept) {
    apply_flip(p, c.spins, c.theta, k);
    ++c.accepted;
  }
  return accept;
}

std::vector<SpinConfig> sample_batch(ChainState& c, const RbmParams& p, int n_samples, int thin,
                                     int burn_in) {
  if (n_samples < 1) throw std::invalid_argument("sample_batch: n_samples >= 1 required");
  if (thin < 0 || burn_in < 0) throw std::invalid_argument("sample_batch: negative steps");
  std::vector<SpinConfig> out;
  out.reserve(n_samples);
  for (int t = 0; t < burn_in; ++t) mh_step(c, p);
  for (int s = 0; s < n_samples; ++s) {
    for (int t = 0; t < thin; ++t) mh_step(c, p);
    out.push_back(c.spins);
  }
  return out;
}

MultiChain::MultiChain(const RbmParams& p, int n_chains, std::uint64_t master_seed) {
  if (n_chains < 1) throw std::invalid_argument("MultiChain: n_chains >= 1 required");
  chains_.reserve(n_chains);
  for (int i = 0; i < n_chains; ++i) chains_.push_back(ChainState::init(p, master_seed, i));
}

std::vector<SpinConfig> MultiChain::sample(const RbmParams& p, int n_samples, int thin,
                                           int burn_in) {
  const int k = size();
  std::vector<std::vector<SpinConfig>> shares(k);
  // Chains are independent; each writes only its own slot, so the merged
  // batch is identical for any thread count.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < k; ++i) {
    const int share = n_samples / k + (i < n_samples % k ? 1 : 0);
    if (share > 0) shares[i] = sample_batch(chains_[i], p, share, thin, burn_in);
  }
  std::vector<SpinConfig> merged;
  merged.reserve(n_samples);
  for (auto& s : shares)
    for (auto& cfg : s) merged.push_back(std::move(cfg));
  return merged;
}

void MultiChain::refresh(const RbmParams& p) {
  for (auto& c : chains_) c.refresh(p);
}

}  // namespace spinmap
