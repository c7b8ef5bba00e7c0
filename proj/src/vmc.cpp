#include "spinmap/vmc.hpp"

#include "spinmap/sampler.hpp"

#include <Eigen/Cholesky>

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinmap {

namespace {

void check_config(const VmcConfig& cfg) {
  if (cfg.n_iterations < 1) throw std::invalid_argument("n_iterations must be >= 1");
  if (cfg.learning_rate <= 0.0) throw std::invalid_argument("learning_rate must be positive");
  if (cfg.sr_epsilon < 0.0) throw std::invalid_argument("sr_epsilon must be nonnegative");
  if (cfg.convergence_window < 1) throw std::invalid_argument("convergence_window must be >= 1");
  if (cfg.alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
}

// Jacobi-preconditioned conjugate gradient on (S + eps I) x = b without
// forming S.
Eigen::VectorXd solve_cg(const Eigen::MatrixXd& oc, double eps, const Eigen::VectorXd& b) {
  const Eigen::Index dim = oc.cols();
  Eigen::VectorXd diag(dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    diag[j] = oc.col(j).squaredNorm() / oc.rows() + eps;
  const auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return kernels::covariance_matvec(oc, v) + eps * v;
  };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd r = b;
  Eigen::VectorXd z = r.cwiseQuotient(diag);
  Eigen::VectorXd d = z;
  double rz = r.dot(z);
  const double tol = 1e-12 * std::max(1.0, b.norm());
  const Eigen::Index max_iter = 50 * dim + 100;
  for (Eigen::Index it = 0; it < max_iter && r.norm() > tol; ++it) {
    const Eigen::VectorXd ad = apply(d);
    const double da = d.dot(ad);
    if (da <= 0.0) throw NumericError("SR system is not positive definite");
    const double step = rz / da;
    x += step * d;
    r -= step * ad;
    z = r.cwiseQuotient(diag);
    const double rz_next = r.dot(z);
    d = z + (rz_next / rz) * d;
    rz = rz_next;
  }
  return x;
}

}  // namespace

VmcPlan plan_vmc(const VmcConfig& cfg, int L) {
  VmcPlan plan;
  plan.samples = cfg.samples_per_iter > 0 ? cfg.samples_per_iter : 10 * L;
  plan.chains = cfg.n_chains > 0 ? cfg.n_chains : std::min(8, plan.samples);
  plan.thin = cfg.thin > 0 ? cfg.thin : L;
  plan.burn_in0 = cfg.burn_in >= 0 ? cfg.burn_in : 10 * L;
  plan.hidden = std::max(1, static_cast<int>(std::lround(cfg.alpha * L)));
  return plan;
}

std::int64_t local_energy(const MappingCode& code, const SpinConfig& s) {
  if (static_cast<int>(s.size()) != code.L)
    throw std::invalid_argument("spin configuration length does not match the code");
  return penalty(code, spins_to_bits(s));
}

EnergyStats batch_stats(const MappingCode& code, const std::vector<SpinConfig>& samples) {
  if (samples.empty()) throw std::invalid_argument("batch_stats needs at least one sample");
  EnergyStats st;
  st.n = static_cast<int>(samples.size());
  st.min_energy = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> e(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    e[i] = local_energy(code, samples[i]);
    st.mean += static_cast<double>(e[i]);
    st.min_energy = std::min(st.min_energy, e[i]);
    if (e[i] == 0) ++st.hit_count;
  }
  st.mean /= st.n;
  for (std::int64_t v : e) {
    const double d = static_cast<double>(v) - st.mean;
    st.variance += d * d;
  }
  st.variance /= st.n;
  return st;
}

Eigen::VectorXd sr_update(const RbmParams& p, const std::vector<SpinConfig>& samples,
                          const MappingCode& code, const VmcConfig& cfg) {
  if (samples.size() < 2) throw std::invalid_argument("sr_update needs at least two samples");
  const Eigen::MatrixXd o = kernels::derivative_matrix(p, samples);
  const Eigen::VectorXd e = kernels::batch_penalties(code, samples);
  const Eigen::MatrixXd oc = o.rowwise() - o.colwise().mean();
  const Eigen::VectorXd ec = e.array() - e.mean();
  const Eigen::VectorXd f = kernels::sr_force(oc, ec);
  const Eigen::Index dim = f.size();
  if (!f.allFinite()) throw NumericError("non-finite SR force");
  if (f.norm() == 0.0) return Eigen::VectorXd::Zero(dim);

  const double diag_mean = oc.squaredNorm() / (static_cast<double>(oc.rows()) * dim);
  const double eps = cfg.sr_epsilon * diag_mean;
  const Eigen::VectorXd b = -cfg.learning_rate * f;

  Eigen::VectorXd delta;
  if (dim <= cfg.sr_dense_max_dim) {
    Eigen::MatrixXd s = kernels::covariance(oc);
    s.diagonal().array() += eps;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
    if (ldlt.info() != Eigen::Success) throw NumericError("SR factorization failed");
    delta = ldlt.solve(b);
    const double residual = (s * delta - b).norm();
    if (!(residual <= 1e-10 * std::max(1.0, b.norm())))
      throw NumericError("SR solve residual exceeds tolerance");
  } else {
    delta = solve_cg(oc, eps, b);
    const Eigen::VectorXd residual_vec = kernels::covariance_matvec(oc, delta) + eps * delta - b;
    if (!(residual_vec.norm() <= 1e-10 * std::max(1.0, b.norm())))
      throw NumericError("SR solve residual exceeds tolerance");
  }
  if (!delta.allFinite()) throw NumericError("non-finite SR update");
  return delta;
}

bool converged(const std::vector<EnergyStats>& history, const VmcConfig& cfg) {
  const std::size_t w = static_cast<std::size_t>(cfg.convergence_window);
  if (history.size() < w) return false;
  bool ground = true;
  for (std::size_t i = history.size() - w; i < history.size(); ++i)
    ground = ground && history[i].variance == 0.0 && history[i].mean == 0.0;
  if (ground) return true;
  const std::int64_t floor = history[history.size() - w].min_energy;
  if (floor < 1) return false;
  for (std::size_t i = history.size() - w; i < history.size(); ++i) {
    if (history[i].min_energy != floor) return false;
    if (std::abs(history[i].mean - static_cast<double>(floor)) > 0.5) return false;
  }
  return true;
}

VmcResult run_rbm_sqa(const Graph& g1, const Graph& g2, const VmcConfig& cfg) {
  check_config(cfg);
  VmcResult result;
  const std::optional<MappingCode> code = build_code(g1, g2);
  if (!code) {
    result.trace.verdict = Verdict::NonIsomorphicDegree;
    return result;
  }
  const int L = code->L;
  const VmcPlan plan = plan_vmc(cfg, L);

  RbmParams p = init_params(L, plan.hidden, cfg.sigma, cfg.seed);
  MultiChain chains(p, plan.chains, cfg.seed);
  RunTrace& trace = result.trace;
  std::vector<EnergyStats> history;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  BitConfig best_bits;
  VertexMapping found;
  bool have_mapping = false;

  for (int iter = 0; iter < cfg.n_iterations; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    const int burn = iter == 0 ? plan.burn_in0 : 0;
    const std::vector<SpinConfig> batch = chains.sample(p, plan.samples, plan.thin, burn);
    const EnergyStats stats = batch_stats(*code, batch);
    history.push_back(stats);

    int verified = 0;
    for (const SpinConfig& s : batch) {
      if (local_energy(*code, s) != 0) continue;
      const BitConfig x = spins_to_bits(s);
      const VertexMapping m = decode_mapping(*code, x);
      if (m.complete() && verify_mapping(g1, g2, m)) {
        ++verified;
        if (!have_mapping) {
          found = m;
          have_mapping = true;
        }
      }
    }
    for (const SpinConfig& s : batch) {
      const std::int64_t e = local_energy(*code, s);
      if (e < best) {
        best = e;
        best_bits = spins_to_bits(s);
      }
    }

    TraceRow row;
    row.iteration = iter;
    row.mean_energy = stats.mean;
    row.variance = stats.variance;
    row.best_energy = best;
    row.hit_rate = static_cast<double>(verified) / stats.n;
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    trace.rows.push_back(row);

    if (cfg.early_stop_on_hit && have_mapping) break;
    if (converged(history, cfg)) {
      trace.converged = true;
      break;
    }
    if (iter + 1 < cfg.n_iterations) {
      const Eigen::VectorXd delta = sr_update(p, batch, *code, cfg);
      apply_update(p, delta);
      chains.refresh(p);
    }
  }

  // Final hit rate comes from a fresh measurement batch under the converged
  // amplitudes, kept out of the per-iteration rows.
  {
    const std::vector<SpinConfig> fresh = chains.sample(p, plan.samples, plan.thin, 0);
    int verified = 0;
    for (const SpinConfig& s : fresh) {
      const std::int64_t e = local_energy(*code, s);
      if (e < best) {
        best = e;
        best_bits = spins_to_bits(s);
      }
      if (e != 0) continue;
      const VertexMapping m = decode_mapping(*code, spins_to_bits(s));
      if (m.complete() && verify_mapping(g1, g2, m)) {
        ++verified;
        if (!have_mapping) {
          found = m;
          have_mapping = true;
        }
      }
    }
    trace.fresh_hit_rate = static_cast<double>(verified) / fresh.size();
  }

  // One exploration unit = one recorded optimization sample; the trailing
  // measurement batch is readout, not search.
  trace.exploration_units = static_cast<std::int64_t>(trace.rows.size()) * plan.samples;
  trace.best_energy = best;
  trace.best_bits = best_bits;
  if (have_mapping) {
    trace.verdict = Verdict::Isomorphic;
    trace.mapping = found;
  } else {
    trace.verdict = Verdict::NotFound;
  }
  result.params = p;
  return result;
}

}  // namespace spinmap
