#pragma once

#include "spinmap/baselines.hpp"
#include "spinmap/vmc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spinmap {

enum class BackendKind { Sa, Sqa, Rbm };

std::optional<BackendKind> parse_backend(const std::string& name);
std::string backend_name(BackendKind b);

struct ExperimentConfig {
  SaConfig sa;
  SqaConfig sqa;
  VmcConfig rbm;
  int reps = 100;
  std::uint64_t seed_base = 0;
  std::string out_dir = ".";
  bool timing = true;
};

// Flat "key = value" lines under [sa], [sqa], [rbm], [run] sections.
// Unknown sections or keys are parse errors; '#' starts a comment.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

// Candidate solutions a backend will explore on an L-bit code: annealing
// steps times per-step budget, with the 10*L sweep/sample default resolved.
std::int64_t backend_budget(const ExperimentConfig& cfg, BackendKind b, int L);

// One repetition with the given seed. RBM early stop applies in solve mode
// only; the annealers always run their full schedule.
RunTrace run_backend(const Graph& g1, const Graph& g2, BackendKind b,
                     const ExperimentConfig& cfg, std::uint64_t seed, bool early_stop_rbm);

struct ReportRow {
  std::string instance;
  std::string backend;
  int n = 0;
  int qubits = 0;
  double space_log2 = 0.0;
  int reps = 0;
  double mean_best_energy = 0.0;
  double final_hit_rate = 0.0;     // mean per-repetition final hit rate
  double mean_iter_seconds = 0.0;  // mean per-iteration wall time
};

ReportRow aggregate_runs(const std::string& instance, BackendKind b, const Graph& g1, int qubits,
                         const std::vector<RunTrace>& runs);

// Header plus one row per line; the timestamp lives in a leading comment.
// With include_timing = false the timing column is zeroed.
std::string format_report_csv(const std::vector<ReportRow>& rows, bool include_timing);

struct GeneratedPair {
  Graph g1;
  Graph g2;
  std::vector<std::string> header;  // comment lines for the pair file
  bool verified = true;             // oracle-checked claim in the header
};

// kind: iso-random | noniso-same-degree | petersen-vs-prism. The noniso
// kind rewires edges degree-preservingly and certifies non-isomorphism by
// brute force for n <= 10; beyond that the pair is tagged unverified.
GeneratedPair gen_pair(const std::string& kind, int n, std::uint64_t seed);

}  // namespace spinmap
