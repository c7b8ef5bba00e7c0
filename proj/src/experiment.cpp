#include "spinmap/experiment.hpp"

#include "spinmap/instances.hpp"
#include "spinmap/rng.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace spinmap {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& v, int line) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ParseError("config line " + std::to_string(line) + ": bad number '" + v + "'");
  }
  if (used != v.size())
    throw ParseError("config line " + std::to_string(line) + ": bad number '" + v + "'");
  return out;
}

std::int64_t parse_int(const std::string& v, int line) {
  const double d = parse_real(v, line);
  const auto i = static_cast<std::int64_t>(d);
  if (static_cast<double>(i) != d)
    throw ParseError("config line " + std::to_string(line) + ": expected integer, got '" + v +
                     "'");
  return i;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ParseError("config line " + std::to_string(line) + ": expected on/off, got '" + v + "'");
}

}  // namespace

std::optional<BackendKind> parse_backend(const std::string& name) {
  if (name == "sa") return BackendKind::Sa;
  if (name == "sqa") return BackendKind::Sqa;
  if (name == "rbm") return BackendKind::Rbm;
  return std::nullopt;
}

std::string backend_name(BackendKind b) {
  switch (b) {
    case BackendKind::Sa: return "sa";
    case BackendKind::Sqa: return "sqa";
    case BackendKind::Rbm: return "rbm";
  }
  return "?";
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("config line " + std::to_string(line_no) + ": unterminated section");
      section = line.substr(1, line.size() - 2);
      if (section != "sa" && section != "sqa" && section != "rbm" && section != "run")
        throw ParseError("config line " + std::to_string(line_no) + ": unknown section [" +
                         section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ParseError("config line " + std::to_string(line_no) + ": key outside any section");

    const auto unknown = [&]() -> ParseError {
      return ParseError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                        "' in [" + section + "]");
    };
    if (section == "sa") {
      if (key == "t0") cfg.sa.t0 = parse_real(value, line_no);
      else if (key == "t_final") cfg.sa.t_final = parse_real(value, line_no);
      else if (key == "n_annealing") cfg.sa.n_annealing = static_cast<int>(parse_int(value, line_no));
      else if (key == "n_sweep") cfg.sa.n_sweep = static_cast<int>(parse_int(value, line_no));
      else throw unknown();
    } else if (section == "sqa") {
      if (key == "gamma0") cfg.sqa.gamma0 = parse_real(value, line_no);
      else if (key == "gamma_final") cfg.sqa.gamma_final = parse_real(value, line_no);
      else if (key == "tau") cfg.sqa.tau = static_cast<int>(parse_int(value, line_no));
      else if (key == "pt_temperature") cfg.sqa.pt_temperature = parse_real(value, line_no);
      else if (key == "n_annealing") cfg.sqa.n_annealing = static_cast<int>(parse_int(value, line_no));
      else if (key == "n_sweep") cfg.sqa.n_sweep = static_cast<int>(parse_int(value, line_no));
      else throw unknown();
    } else if (section == "rbm") {
      if (key == "iterations") cfg.rbm.n_iterations = static_cast<int>(parse_int(value, line_no));
      else if (key == "samples") cfg.rbm.samples_per_iter = static_cast<int>(parse_int(value, line_no));
      else if (key == "lr") cfg.rbm.learning_rate = parse_real(value, line_no);
      else if (key == "sr_epsilon") cfg.rbm.sr_epsilon = parse_real(value, line_no);
      else if (key == "window") cfg.rbm.convergence_window = static_cast<int>(parse_int(value, line_no));
      else if (key == "alpha") cfg.rbm.alpha = parse_real(value, line_no);
      else if (key == "sigma") cfg.rbm.sigma = parse_real(value, line_no);
      else if (key == "chains") cfg.rbm.n_chains = static_cast<int>(parse_int(value, line_no));
      else if (key == "thin") cfg.rbm.thin = static_cast<int>(parse_int(value, line_no));
      else if (key == "burn_in") cfg.rbm.burn_in = static_cast<int>(parse_int(value, line_no));
      else if (key == "early_stop") cfg.rbm.early_stop_on_hit = parse_bool(value, line_no);
      else if (key == "sr_dense_max_dim") cfg.rbm.sr_dense_max_dim = static_cast<int>(parse_int(value, line_no));
      else throw unknown();
    } else {  // run
      if (key == "reps") cfg.reps = static_cast<int>(parse_int(value, line_no));
      else if (key == "seed") cfg.seed_base = static_cast<std::uint64_t>(parse_int(value, line_no));
      else if (key == "timing") cfg.timing = parse_bool(value, line_no);
      else if (key == "out") cfg.out_dir = value;
      else throw unknown();
    }
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  apply_config_text(cfg, buf.str());
}

std::int64_t backend_budget(const ExperimentConfig& cfg, BackendKind b, int L) {
  switch (b) {
    case BackendKind::Sa:
      return static_cast<std::int64_t>(cfg.sa.n_annealing) *
             (cfg.sa.n_sweep > 0 ? cfg.sa.n_sweep : 10 * L);
    case BackendKind::Sqa:
      return static_cast<std::int64_t>(cfg.sqa.n_annealing) *
             (cfg.sqa.n_sweep > 0 ? cfg.sqa.n_sweep : 10 * L);
    case BackendKind::Rbm:
      return static_cast<std::int64_t>(cfg.rbm.n_iterations) *
             (cfg.rbm.samples_per_iter > 0 ? cfg.rbm.samples_per_iter : 10 * L);
  }
  return 0;
}

RunTrace run_backend(const Graph& g1, const Graph& g2, BackendKind b, const ExperimentConfig& cfg,
                     std::uint64_t seed, bool early_stop_rbm) {
  if (b == BackendKind::Rbm) {
    VmcConfig c = cfg.rbm;
    c.seed = seed;
    c.early_stop_on_hit = early_stop_rbm || c.early_stop_on_hit;
    return run_rbm_sqa(g1, g2, c).trace;
  }
  const std::optional<MappingCode> code = build_code(g1, g2);
  if (!code) {
    RunTrace t;
    t.verdict = Verdict::NonIsomorphicDegree;
    return t;
  }
  if (b == BackendKind::Sa) {
    SaConfig c = cfg.sa;
    c.seed = seed;
    return run_sa(*code, c);
  }
  SqaConfig c = cfg.sqa;
  c.seed = seed;
  return run_pimc_sqa(*code, c);
}

ReportRow aggregate_runs(const std::string& instance, BackendKind b, const Graph& g1, int qubits,
                         const std::vector<RunTrace>& runs) {
  ReportRow row;
  row.instance = instance;
  row.backend = backend_name(b);
  row.n = g1.n;
  row.qubits = qubits;
  row.space_log2 = static_cast<double>(qubits);
  row.reps = static_cast<int>(runs.size());
  for (const RunTrace& t : runs) {
    row.mean_best_energy += static_cast<double>(t.best_energy);
    row.final_hit_rate += t.final_hit_rate();
    if (!t.rows.empty())
      row.mean_iter_seconds += t.total_wall_ms() / (1000.0 * t.rows.size());
  }
  if (!runs.empty()) {
    row.mean_best_energy /= runs.size();
    row.final_hit_rate /= runs.size();
    row.mean_iter_seconds /= runs.size();
  }
  return row;
}

std::string format_report_csv(const std::vector<ReportRow>& rows, bool include_timing) {
  std::ostringstream out;
  std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "# generated " << stamp << "\n";
  out << "instance,backend,n,qubits,space_log2,reps,mean_best_energy,final_hit_rate,"
         "mean_iter_seconds\n";
  for (const ReportRow& r : rows) {
    out << r.instance << ',' << r.backend << ',' << r.n << ',' << r.qubits << ','
        << format_double(r.space_log2) << ',' << r.reps << ','
        << format_double(r.mean_best_energy) << ',' << format_double(r.final_hit_rate) << ','
        << format_double(include_timing ? r.mean_iter_seconds : 0.0) << "\n";
  }
  return out.str();
}

namespace {

// One degree-preserving double edge swap; returns false when no valid swap
// was found in a bounded number of draws.
bool double_edge_swap(std::vector<std::pair<int, int>>& edges,
                      std::set<std::pair<int, int>>& present, std::mt19937_64& gen) {
  const int m = static_cast<int>(edges.size());
  if (m < 2) return false;
  for (int attempt = 0; attempt < 40; ++attempt) {
    const int i = rng::uniform_int(gen, m);
    const int j = rng::uniform_int(gen, m);
    if (i == j) continue;
    auto [a, b] = edges[i];
    auto [c, d] = edges[j];
    if (rng::uniform01(gen) < 0.5) std::swap(c, d);
    // New edges (a, d) and (c, b); all four endpoints must be distinct.
    if (a == c || a == d || b == c || b == d) continue;
    const auto norm = [](int u, int v) { return std::make_pair(std::min(u, v), std::max(u, v)); };
    const auto e1 = norm(a, d);
    const auto e2 = norm(c, b);
    if (e1 == e2 || present.count(e1) || present.count(e2)) continue;
    present.erase(norm(a, b));
    present.erase(norm(c, d));
    present.insert(e1);
    present.insert(e2);
    edges[i] = e1;
    edges[j] = e2;
    return true;
  }
  return false;
}

GeneratedPair gen_noniso(int n, std::uint64_t seed) {
  const bool certifiable = n <= 10;
  for (int attempt = 0; attempt < 60; ++attempt) {
    const Graph g1 = random_graph(n, seed + 7919ull * attempt);
    if (g1.m() < 2) continue;
    auto gen = rng::engine(seed, 0x6E6Full + attempt);
    std::vector<std::pair<int, int>> edges = g1.edges;
    std::set<std::pair<int, int>> present(edges.begin(), edges.end());
    int swaps = 0;
    for (int round = 0; round < 6 * n; ++round) {
      if (double_edge_swap(edges, present, gen)) ++swaps;
      if (swaps == 0) continue;
      const Graph g2 = Graph::make(n, edges);
      if (degree_sequence(g1) != degree_sequence(g2)) continue;  // defensive
      if (!certifiable) {
        if (swaps >= 2 * n) {
          GeneratedPair out{g1, g2, {}, false};
          return out;
        }
        continue;
      }
      if (!brute_force_isomorphism(g1, g2)) {
        GeneratedPair out{g1, g2, {}, true};
        return out;
      }
    }
  }
  throw std::invalid_argument(
      "could not produce a same-degree non-isomorphic pair at this size (none may exist)");
}

}  // namespace

GeneratedPair gen_pair(const std::string& kind, int n, std::uint64_t seed) {
  GeneratedPair out;
  if (kind == "iso-random") {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    out.g1 = random_graph(n, seed);
    out.g2 = random_relabel(out.g1, seed);
    out.verified = true;
    out.header = {"kind=iso-random n=" + std::to_string(n) + " seed=" + std::to_string(seed),
                  "isomorphic by construction"};
    return out;
  }
  if (kind == "noniso-same-degree") {
    if (n < 4) throw std::invalid_argument("n must be >= 4");
    out = gen_noniso(n, seed);
    out.header = {"kind=noniso-same-degree n=" + std::to_string(n) +
                  " seed=" + std::to_string(seed)};
    out.header.push_back(out.verified ? "non-isomorphic, oracle verified"
                                      : "unverified: n > 10 is beyond the oracle guard");
    return out;
  }
  if (kind == "petersen-vs-prism") {
    out.g1 = petersen_graph();
    out.g2 = pentagonal_prism_graph();
    out.verified = true;
    out.header = {"kind=petersen-vs-prism", "non-isomorphic 3-regular pair"};
    return out;
  }
  throw std::invalid_argument("unknown kind: " + kind +
                              " (expected iso-random | noniso-same-degree | petersen-vs-prism)");
}

}  // namespace spinmap
