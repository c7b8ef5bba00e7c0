#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinmap/instances.hpp"
#include "spinmap/kernels.hpp"
#include "spinmap/rng.hpp"

#include <omp.h>

#include <cmath>

using namespace spinmap;

namespace {

std::vector<SpinConfig> random_samples(int L, int n, std::uint64_t seed) {
  auto g = rng::engine(seed, 0);
  std::vector<SpinConfig> out(n, SpinConfig(L));
  for (auto& s : out)
    for (auto& v : s) v = rng::uniform01(g) < 0.5 ? -1 : 1;
  return out;
}

bool bitwise_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

bool bitwise_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

TEST_CASE("parallel kernels replicate the serial reference bitwise") {
  omp_set_num_threads(4);
  auto [g1, g2] = four_vertex_pair();
  const MappingCode code = *build_code(g1, g2);
  const RbmParams p = init_params(code.L, code.L, 0.4, 17);
  const auto samples = random_samples(code.L, 137, 5);

  const Eigen::VectorXd e_s = kernels::batch_penalties_serial(code, samples);
  CHECK(bitwise_equal(e_s, kernels::batch_penalties(code, samples)));

  const Eigen::MatrixXd o_s = kernels::derivative_matrix_serial(p, samples);
  CHECK(bitwise_equal(o_s, kernels::derivative_matrix(p, samples)));

  const Eigen::MatrixXd oc = o_s.rowwise() - o_s.colwise().mean();
  const Eigen::VectorXd ec = e_s.array() - e_s.mean();
  CHECK(bitwise_equal(kernels::sr_force_serial(oc, ec), kernels::sr_force(oc, ec)));
  CHECK(bitwise_equal(kernels::covariance_serial(oc), kernels::covariance(oc)));

  auto gv = rng::engine(9, 0);
  Eigen::VectorXd v(oc.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng::normal(gv, 0.0, 1.0);
  CHECK(bitwise_equal(kernels::covariance_matvec_serial(oc, v), kernels::covariance_matvec(oc, v)));

  const auto sum_s = kernels::exhaustive_summary_serial(p, code);
  const auto sum_p = kernels::exhaustive_summary(p, code);
  CHECK(sum_s.min_penalty == sum_p.min_penalty);
  CHECK(sum_s.ground_mass == sum_p.ground_mass);
  CHECK(sum_s.energy == sum_p.energy);
}

TEST_CASE("batch penalties agree with direct evaluation") {
  auto [g1, g2] = four_vertex_pair();
  const MappingCode code = *build_code(g1, g2);
  const auto samples = random_samples(code.L, 40, 2);
  const Eigen::VectorXd e = kernels::batch_penalties(code, samples);
  for (int i = 0; i < 40; ++i)
    CHECK(e[i] == static_cast<double>(penalty(code, spins_to_bits(samples[i]))));
}

TEST_CASE("derivative matrix rows match the single-sample evaluator") {
  const RbmParams p = init_params(5, 7, 0.3, 4);
  const auto samples = random_samples(5, 6, 11);
  const Eigen::MatrixXd o = kernels::derivative_matrix(p, samples);
  Eigen::VectorXd row(p.packed_size());
  for (int i = 0; i < 6; ++i) {
    const ThetaCache theta = make_theta(p, samples[i]);
    log_derivatives(p, samples[i], theta, row);
    CHECK((o.row(i).transpose() - row).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("moment kernels match dense linear algebra") {
  const RbmParams p = init_params(6, 6, 0.2, 29);
  const auto samples = random_samples(6, 64, 3);
  const Eigen::MatrixXd o = kernels::derivative_matrix_serial(p, samples);
  auto g = rng::engine(2, 0);
  Eigen::VectorXd e(64);
  for (int i = 0; i < 64; ++i) e[i] = rng::normal(g, 0.0, 1.0);
  const Eigen::MatrixXd oc = o.rowwise() - o.colwise().mean();
  const Eigen::VectorXd ec = e.array() - e.mean();

  const Eigen::VectorXd f_ref = oc.transpose() * ec / 64.0;
  CHECK((kernels::sr_force(oc, ec) - f_ref).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::MatrixXd s_ref = oc.transpose() * oc / 64.0;
  const Eigen::MatrixXd s = kernels::covariance(oc);
  CHECK((s - s_ref).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::VectorXd v(oc.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng::normal(g, 0.0, 1.0);
  const Eigen::VectorXd w = kernels::covariance_matvec(oc, v);
  CHECK((w - s_ref * v).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("exhaustive summary against direct enumeration") {
  auto [g1, g2] = four_vertex_pair();
  const MappingCode code = *build_code(g1, g2);

  SUBCASE("uniform amplitudes") {
    const RbmParams p = init_params(code.L, code.L, 0.0, 1);
    const auto sum = kernels::exhaustive_summary(p, code);
    CHECK(sum.min_penalty == 0);
    // Two verified assignments out of 2^6 states.
    CHECK(sum.ground_mass == doctest::Approx(2.0 / 64.0).epsilon(1e-14));
    std::int64_t total = 0;
    BitConfig x(code.L);
    for (std::uint32_t m = 0; m < 64; ++m) {
      for (int k = 0; k < code.L; ++k) x[k] = (m >> k) & 1;
      total += penalty(code, x);
    }
    CHECK(sum.energy == doctest::Approx(static_cast<double>(total) / 64.0).epsilon(1e-14));
  }

  SUBCASE("generic amplitudes") {
    const RbmParams p = init_params(code.L, code.L, 0.7, 23);
    const auto sum = kernels::exhaustive_summary(p, code);
    double z = 0.0, ze = 0.0, ground = 0.0;
    BitConfig x(code.L);
    SpinConfig s(code.L);
    for (std::uint32_t m = 0; m < 64; ++m) {
      for (int k = 0; k < code.L; ++k) {
        x[k] = (m >> k) & 1;
        s[k] = x[k] ? 1 : -1;
      }
      const double w = std::exp(2.0 * log_psi(p, s));
      z += w;
      ze += w * static_cast<double>(penalty(code, x));
      if (penalty(code, x) == 0) ground += w;
    }
    CHECK(sum.min_penalty == 0);
    CHECK(sum.energy == doctest::Approx(ze / z).epsilon(1e-12));
    CHECK(sum.ground_mass == doctest::Approx(ground / z).epsilon(1e-12));
  }
}

TEST_CASE("enumeration guard rejects wide codes") {
  const Graph pet = petersen_graph();
  const Graph prism = pentagonal_prism_graph();
  const MappingCode code = *build_code(pet, prism);
  REQUIRE(code.L == 100);
  const RbmParams p = init_params(code.L, code.L, 0.01, 1);
  CHECK_THROWS_AS(kernels::exhaustive_summary(p, code), std::invalid_argument);
}
