// Serial vs OpenMP timing for the hot kernels. Both variants produce
// bitwise-identical output (covered by tests); this target measures the
// speedup so the parallel paths justify their existence on a given machine.

#include "spinmap/encoding.hpp"
#include "spinmap/instances.hpp"
#include "spinmap/kernels.hpp"
#include "spinmap/rbm.hpp"
#include "spinmap/rng.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace spinmap;
using namespace spinmap::kernels;
using Clock = std::chrono::steady_clock;

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-22s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

std::vector<SpinConfig> random_batch(int n, int L, std::uint64_t seed) {
  auto gen = rng::engine(seed, 0xBE);
  std::vector<SpinConfig> out(n);
  for (auto& s : out) {
    s.resize(L);
    for (auto& v : s) v = rng::uniform01(gen) < 0.5 ? -1 : 1;
  }
  return out;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  const auto [g1, g2] = srg16_pair();
  const auto code = build_code(g1, g2);
  const int L = code->L;
  // 1/4 hidden density keeps the derivative matrix near 100 MB.
  const RbmParams p = init_params(L, L / 4, 0.01, 13);
  const auto samples = random_batch(1024, L, 29);
  std::printf("instance: srg16, qubits %d, batch %zu, packed params %d\n\n", L, samples.size(),
              p.packed_size());
  std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  report("batch_penalties",
         time_best_of(5, [&] { batch_penalties_serial(*code, samples); }),
         time_best_of(5, [&] { batch_penalties(*code, samples); }));

  const Eigen::MatrixXd o = derivative_matrix(p, samples);
  report("derivative_matrix",
         time_best_of(3, [&] { derivative_matrix_serial(p, samples); }),
         time_best_of(3, [&] { derivative_matrix(p, samples); }));

  const Eigen::VectorXd e = batch_penalties(*code, samples);
  const Eigen::MatrixXd oc = o.rowwise() - o.colwise().mean();
  const Eigen::VectorXd ec = e.array() - e.mean();
  report("sr_force",
         time_best_of(5, [&] { sr_force_serial(oc, ec); }),
         time_best_of(5, [&] { sr_force(oc, ec); }));

  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(oc.cols(), -1.0, 1.0);
  report("covariance_matvec",
         time_best_of(5, [&] { covariance_matvec_serial(oc, v); }),
         time_best_of(5, [&] { covariance_matvec(oc, v); }));

  // Dense covariance is P x P; benchmark it at a packed dimension where the
  // result still fits comfortably (the engine switches to matvec CG above
  // its dense cutoff anyway).
  const Eigen::MatrixXd oc_small = oc.leftCols(512);
  report("covariance",
         time_best_of(3, [&] { covariance_serial(oc_small); }),
         time_best_of(3, [&] { covariance(oc_small); }));

  const auto [h1, h2] = six_vertex_pair();
  const auto small_code = build_code(h1, h2);
  const RbmParams small_p = init_params(small_code->L, small_code->L, 0.01, 17);
  report("exhaustive_summary",
         time_best_of(3, [&] { exhaustive_summary_serial(small_p, *small_code); }),
         time_best_of(3, [&] { exhaustive_summary(small_p, *small_code); }));

  return 0;
}
