#include "spinmap/rbm.hpp"

#include "spinmap/rng.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spinmap {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

RbmParams init_params(int L, int H, double sigma, std::uint64_t seed) {
  if (L < 1 || H < 1) throw std::invalid_argument("init_params: L, H >= 1 required");
  if (sigma < 0) throw std::invalid_argument("init_params: sigma >= 0 required");
  auto g = rng::engine(seed, 0x5242);
  RbmParams p;
  p.a.resize(L);
  p.b.resize(H);
  p.w.resize(L, H);
  // Draw order is part of the format: a, then b, then W row-major.
  for (int i = 0; i < L; ++i) p.a[i] = rng::normal(g, 0.0, sigma);
  for (int j = 0; j < H; ++j) p.b[j] = rng::normal(g, 0.0, sigma);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < H; ++j) p.w(i, j) = rng::normal(g, 0.0, sigma);
  return p;
}

double ln_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - kLn2;
}

ThetaCache make_theta(const RbmParams& p, const SpinConfig& s) {
  if (static_cast<int>(s.size()) != p.visible())
    throw std::invalid_argument("make_theta: spin length mismatch");
  ThetaCache theta = p.b;
  for (int i = 0; i < p.visible(); ++i)
    if (s[i] > 0)
      theta += p.w.row(i).transpose();
    else
      theta -= p.w.row(i).transpose();
  return theta;
}

double log_psi(const RbmParams& p, const SpinConfig& s) {
  if (static_cast<int>(s.size()) != p.visible())
    throw std::invalid_argument("log_psi: spin length mismatch");
  double acc = 0.0;
  for (int i = 0; i < p.visible(); ++i) acc += s[i] > 0 ? p.a[i] : -p.a[i];
  const ThetaCache theta = make_theta(p, s);
  for (int j = 0; j < p.hidden(); ++j) acc += kLn2 + ln_cosh(theta[j]);
  return acc;
}

double log_ratio_flip(const RbmParams& p, const SpinConfig& s, const ThetaCache& cache, int k) {
  if (k < 0 || k >= p.visible()) throw std::invalid_argument("log_ratio_flip: site out of range");
  const double sk = s[k];
  double acc = -2.0 * p.a[k] * sk;
  const auto wk = p.w.row(k);
  for (int j = 0; j < p.hidden(); ++j)
    acc += ln_cosh(cache[j] - 2.0 * wk[j] * sk) - ln_cosh(cache[j]);
  return acc;
}

void apply_flip(const RbmParams& p, SpinConfig& s, ThetaCache& cache, int k) {
  const double sk = s[k];
  cache -= 2.0 * sk * p.w.row(k).transpose();
  s[k] = static_cast<std::int8_t>(-s[k]);
}

void log_derivatives(const RbmParams& p, const SpinConfig& s, const ThetaCache& cache,
                     Eigen::VectorXd& out) {
  const int L = p.visible(), H = p.hidden();
  out.resize(static_cast<Eigen::Index>(L) + H + static_cast<Eigen::Index>(L) * H);
  for (int i = 0; i < L; ++i) out[i] = s[i];
  for (int j = 0; j < H; ++j) out[L + j] = std::tanh(cache[j]);
  for (int i = 0; i < L; ++i) {
    const double si = s[i];
    const Eigen::Index base = L + H + static_cast<Eigen::Index>(i) * H;
    for (int j = 0; j < H; ++j) out[base + j] = si * out[L + j];
  }
}

void apply_update(RbmParams& p, const Eigen::VectorXd& delta) {
  if (delta.size() != p.packed_size())
    throw std::invalid_argument("apply_update: delta length mismatch");
  if (!delta.allFinite()) throw NumericError("apply_update: non-finite update entries");
  const int L = p.visible(), H = p.hidden();
  p.a += delta.head(L);
  p.b += delta.segment(L, H);
  for (int i = 0; i < L; ++i)
    p.w.row(i) += delta.segment(L + H + static_cast<Eigen::Index>(i) * H, H).transpose();
}

Eigen::VectorXd pack_params(const RbmParams& p) {
  const int L = p.visible(), H = p.hidden();
  Eigen::VectorXd v(p.packed_size());
  v.head(L) = p.a;
  v.segment(L, H) = p.b;
  for (int i = 0; i < L; ++i)
    v.segment(L + H + static_cast<Eigen::Index>(i) * H, H) = p.w.row(i).transpose();
  return v;
}

RbmParams unpack_params(int L, int H, const Eigen::VectorXd& v) {
  if (v.size() != static_cast<Eigen::Index>(L) + H + static_cast<Eigen::Index>(L) * H)
    throw std::invalid_argument("unpack_params: length mismatch");
  RbmParams p;
  p.a = v.head(L);
  p.b = v.segment(L, H);
  p.w.resize(L, H);
  for (int i = 0; i < L; ++i)
    p.w.row(i) = v.segment(L + H + static_cast<Eigen::Index>(i) * H, H).transpose();
  return p;
}

void save_params(const std::string& path, const RbmParams& p, std::uint64_t seed,
                 std::int64_t iteration, double alpha, double sigma) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_params: cannot open " + path);
  char buf[64];
  out << "1," << p.visible() << ',' << p.hidden() << ',' << seed << ',' << iteration << ',';
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,0\n", alpha, sigma);
  out << buf;
  const Eigen::VectorXd v = pack_params(p);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v[k]);
    out << buf;
  }
}

ParamSnapshot load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_params: cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw ParseError("load_params: empty file");
  std::istringstream hs(header);
  long long version = 0, L = 0, H = 0, iteration = 0;
  unsigned long long seed = 0;
  double alpha = 0, sigma = 0, reserved = 0;
  char c;
  if (!(hs >> version >> c >> L >> c >> H >> c >> seed >> c >> iteration >> c >> alpha >> c >>
        sigma >> c >> reserved))
    throw ParseError("load_params: bad header");
  if (version != 1) throw ParseError("load_params: unsupported format version");
  Eigen::VectorXd v(L + H + L * H);
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (!(in >> v[k])) throw ParseError("load_params: truncated parameter vector");
  ParamSnapshot snap;
  snap.params = unpack_params(static_cast<int>(L), static_cast<int>(H), v);
  snap.seed = seed;
  snap.iteration = iteration;
  snap.alpha = alpha;
  snap.sigma = sigma;
  return snap;
}

}  // namespace spinmap
