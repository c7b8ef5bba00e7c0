#pragma once

#include "spinmap/graph.hpp"
#include "spinmap/encoding.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spinmap {

enum class Verdict {
  Isomorphic,           // verified penalty-0 mapping in hand
  NotFound,             // budget exhausted, best energy stayed positive
  NonIsomorphicDegree,  // degree sequences differ, solver never ran
};

std::string verdict_name(Verdict v);

struct TraceRow {
  std::int64_t iteration = 0;
  double mean_energy = 0.0;
  double variance = 0.0;
  std::int64_t best_energy = 0;  // best seen up to this iteration
  double hit_rate = 0.0;         // fraction of verified penalty-0 samples
  double wall_ms = 0.0;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  Verdict verdict = Verdict::NotFound;
  VertexMapping mapping;  // filled only for Isomorphic
  std::int64_t best_energy = 0;
  BitConfig best_bits;
  bool converged = false;
  std::int64_t exploration_units = 0;  // total elementary-move budget spent
  // Hit rate of a fresh measurement batch drawn after the run, when the
  // backend supports one; negative means "use the last iteration's rate".
  double fresh_hit_rate = -1.0;

  double final_hit_rate() const {
    if (fresh_hit_rate >= 0.0) return fresh_hit_rate;
    return rows.empty() ? 0.0 : rows.back().hit_rate;
  }
  double total_wall_ms() const;
};

// One row per iteration plus deterministic summary trailer comments. The
// leading timestamp comment is the only non-reproducible line; with
// include_timing = false the wall_ms column is zeroed so repeated runs match
// byte for byte apart from that line.
void write_trace_csv(const std::string& path, const RunTrace& t, bool include_timing);
std::string format_trace_csv(const RunTrace& t, bool include_timing);

// %.17g, round-trip exact for doubles.
std::string format_double(double v);

}  // namespace spinmap
