#include "spinmap/baselines.hpp"

#include "spinmap/rng.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace spinmap {

namespace {

BitConfig random_bits(int L, std::mt19937_64& gen) {
  BitConfig x(L);
  for (auto& b : x) b = rng::uniform01(gen) < 0.5 ? 0 : 1;
  return x;
}

struct BestTracker {
  std::int64_t energy = 0;
  BitConfig bits;
  VertexMapping mapping;
  bool have_mapping = false;

  void init(const MappingCode& code, const DeltaTracker& tr) {
    energy = tr.energy();
    bits = tr.bits();
    check_hit(code, tr);
  }

  // Keeps the best-ever configuration; a penalty-0 state is decoded and
  // verified the moment it is seen.
  void offer(const MappingCode& code, const DeltaTracker& tr) {
    if (tr.energy() >= energy) return;
    energy = tr.energy();
    bits = tr.bits();
    check_hit(code, tr);
  }

 private:
  void check_hit(const MappingCode& code, const DeltaTracker& tr) {
    if (have_mapping || tr.energy() != 0 || code.g1 == nullptr || code.g2 == nullptr) return;
    const VertexMapping m = decode_mapping(code, tr.bits());
    if (m.complete() && verify_mapping(*code.g1, *code.g2, m)) {
      mapping = m;
      have_mapping = true;
    }
  }
};

void finish_trace(RunTrace& trace, const BestTracker& best) {
  trace.best_energy = best.energy;
  trace.best_bits = best.bits;
  if (best.have_mapping) {
    trace.verdict = Verdict::Isomorphic;
    trace.mapping = best.mapping;
  } else {
    trace.verdict = Verdict::NotFound;
  }
}

}  // namespace

double temperature_at(const SaConfig& cfg, int k) {
  if (!(cfg.t0 > cfg.t_final && cfg.t_final > 0.0))
    throw std::invalid_argument("need t0 > t_final > 0");
  if (cfg.n_annealing < 1) throw std::invalid_argument("n_annealing must be >= 1");
  if (k < 0 || k >= cfg.n_annealing) throw std::out_of_range("temperature step out of range");
  if (k == 0 || cfg.n_annealing == 1) return cfg.t0;
  if (k == cfg.n_annealing - 1) return cfg.t_final;
  const double frac = static_cast<double>(k) / (cfg.n_annealing - 1);
  return cfg.t0 * std::pow(cfg.t_final / cfg.t0, frac);
}

double field_at(const SqaConfig& cfg, int k) {
  if (!(cfg.gamma0 > cfg.gamma_final && cfg.gamma_final > 0.0))
    throw std::invalid_argument("need gamma0 > gamma_final > 0");
  if (cfg.n_annealing < 1) throw std::invalid_argument("n_annealing must be >= 1");
  if (k < 0 || k >= cfg.n_annealing) throw std::out_of_range("field step out of range");
  if (k == 0 || cfg.n_annealing == 1) return cfg.gamma0;
  if (k == cfg.n_annealing - 1) return cfg.gamma_final;
  const double frac = static_cast<double>(k) / (cfg.n_annealing - 1);
  return cfg.gamma0 + (cfg.gamma_final - cfg.gamma0) * frac;
}

double slice_coupling(double gamma, int tau, double t_sim) {
  if (!(gamma > 0.0) || !(t_sim > 0.0) || tau < 2)
    throw std::invalid_argument("slice_coupling needs gamma > 0, t_sim > 0, tau >= 2");
  const double tt = tau * t_sim;
  // ln tanh x = log1p(-e^(-2x)) - log1p(e^(-2x)), stable where tanh rounds
  // to 1.
  const double em = std::exp(-2.0 * gamma / tt);
  return -(tt / 2.0) * (std::log1p(-em) - std::log1p(em)) + 0.0;
}

SliceSystem::SliceSystem(const MappingCode& code, int tau, std::mt19937_64& gen) {
  if (tau < 2) throw std::invalid_argument("tau must be >= 2");
  slices_.reserve(tau);
  for (int k = 0; k < tau; ++k) slices_.emplace_back(code, random_bits(code.L, gen));
}

std::int64_t SliceSystem::alignment() const {
  const int t = tau();
  const int L = static_cast<int>(slices_[0].bits().size());
  std::int64_t sum = 0;
  for (int k = 0; k < t; ++k) {
    const int next = (k + 1) % t;
    for (int p = 0; p < L; ++p) sum += spin(k, p) * spin(next, p);
  }
  return sum;
}

double SliceSystem::effective_energy() const {
  std::int64_t problem = 0;
  for (const DeltaTracker& s : slices_) problem += s.energy();
  return static_cast<double>(problem) - coupling_ * static_cast<double>(alignment());
}

double SliceSystem::local_delta(int k, int p) const {
  const int t = tau();
  const int s = spin(k, p);
  const int up = spin((k + t - 1) % t, p);
  const int down = spin((k + 1) % t, p);
  // Flipping s changes the two ordered neighbor terms by -2 s (up + down).
  return static_cast<double>(slices_[k].flip_delta(p)) +
         2.0 * coupling_ * static_cast<double>(s) * static_cast<double>(up + down);
}

void SliceSystem::apply_local(int k, int p) { slices_[k].flip(p); }

std::int64_t SliceSystem::global_delta(int p) const {
  std::int64_t sum = 0;
  for (const DeltaTracker& s : slices_) sum += s.flip_delta(p);
  return sum;
}

void SliceSystem::apply_global(int p) {
  for (DeltaTracker& s : slices_) s.flip(p);
}

int sa_sweep(DeltaTracker& tr, double temp, int n, std::mt19937_64& gen,
             const std::function<void(const DeltaTracker&)>& on_step) {
  const int L = static_cast<int>(tr.bits().size());
  int accepted = 0;
  for (int j = 0; j < n; ++j) {
    const int p = rng::uniform_int(gen, L);
    const std::int64_t de = tr.flip_delta(p);
    bool accept = de <= 0;
    if (!accept) accept = rng::uniform01(gen) < std::exp(-static_cast<double>(de) / temp);
    if (accept) {
      tr.flip(p);
      ++accepted;
    }
    if (on_step) on_step(tr);
  }
  return accepted;
}

RunTrace run_sa(const MappingCode& code, const SaConfig& cfg) {
  const int sweeps = cfg.n_sweep > 0 ? cfg.n_sweep : 10 * code.L;
  auto gen = rng::engine(cfg.seed, 0x5341);
  DeltaTracker tr(code, random_bits(code.L, gen));
  BestTracker best;
  best.init(code, tr);

  RunTrace trace;
  for (int k = 0; k < cfg.n_annealing; ++k) {
    const auto t_start = std::chrono::steady_clock::now();
    const double temp = temperature_at(cfg, k);
    std::int64_t sum = 0, sumsq = 0;
    sa_sweep(tr, temp, sweeps, gen, [&](const DeltaTracker& t) {
      best.offer(code, t);
      const std::int64_t e = t.energy();
      sum += e;
      sumsq += e * e;
    });
    const double mean = static_cast<double>(sum) / sweeps;
    const double var =
        std::max(0.0, static_cast<double>(sumsq) / sweeps - mean * mean);
    TraceRow row;
    row.iteration = k;
    row.mean_energy = mean;
    row.variance = var;
    row.best_energy = best.energy;
    row.hit_rate = best.have_mapping ? 1.0 : 0.0;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
            .count();
    trace.rows.push_back(row);
  }
  trace.exploration_units = static_cast<std::int64_t>(cfg.n_annealing) * sweeps;
  finish_trace(trace, best);
  return trace;
}

RunTrace run_pimc_sqa(const MappingCode& code, const SqaConfig& cfg) {
  const int sweeps = cfg.n_sweep > 0 ? cfg.n_sweep : 10 * code.L;
  const double t_sim = cfg.pt_temperature > 0.0 ? cfg.pt_temperature : 1.0 / cfg.tau;
  // The Trotter stack is a classical system at temperature tau * T.
  const double t_mc = cfg.tau * t_sim;
  auto gen = rng::engine(cfg.seed, 0x5351);
  SliceSystem sys(code, cfg.tau, gen);
  BestTracker best;
  best.init(code, sys.slice(0));
  for (int k = 1; k < cfg.tau; ++k) best.offer(code, sys.slice(k));

  RunTrace trace;
  for (int k = 0; k < cfg.n_annealing; ++k) {
    const auto t_start = std::chrono::steady_clock::now();
    sys.set_coupling(slice_coupling(field_at(cfg, k), cfg.tau, t_sim));
    for (int j = 0; j < sweeps; ++j) {
      // One Monte Carlo step: a single-spin move in one slice, then a
      // whole-qubit move across all slices.
      const int slice = rng::uniform_int(gen, cfg.tau);
      const int site = rng::uniform_int(gen, code.L);
      const double de = sys.local_delta(slice, site);
      bool accept = de <= 0.0;
      if (!accept) accept = rng::uniform01(gen) < std::exp(-de / t_mc);
      if (accept) {
        sys.apply_local(slice, site);
        best.offer(code, sys.slice(slice));
      }

      const int gsite = rng::uniform_int(gen, code.L);
      const std::int64_t dg = sys.global_delta(gsite);
      accept = dg <= 0;
      if (!accept) accept = rng::uniform01(gen) < std::exp(-static_cast<double>(dg) / t_mc);
      if (accept) {
        sys.apply_global(gsite);
        for (int s = 0; s < cfg.tau; ++s) best.offer(code, sys.slice(s));
      }
    }
    std::int64_t sum = 0, sumsq = 0;
    for (int s = 0; s < cfg.tau; ++s) {
      const std::int64_t e = sys.slice(s).energy();
      sum += e;
      sumsq += e * e;
    }
    const double mean = static_cast<double>(sum) / cfg.tau;
    const double var = std::max(0.0, static_cast<double>(sumsq) / cfg.tau - mean * mean);
    TraceRow row;
    row.iteration = k;
    row.mean_energy = mean;
    row.variance = var;
    row.best_energy = best.energy;
    row.hit_rate = best.have_mapping ? 1.0 : 0.0;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
            .count();
    trace.rows.push_back(row);
  }
  trace.exploration_units = static_cast<std::int64_t>(cfg.n_annealing) * sweeps;
  finish_trace(trace, best);
  return trace;
}

}  // namespace spinmap
