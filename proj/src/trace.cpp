#include "spinmap/trace.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinmap {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Isomorphic: return "ISOMORPHIC";
    case Verdict::NotFound: return "NOT_FOUND";
    case Verdict::NonIsomorphicDegree: return "NON_ISOMORPHIC_DEGREE";
  }
  return "UNKNOWN";
}

double RunTrace::total_wall_ms() const {
  double total = 0.0;
  for (const TraceRow& r : rows) total += r.wall_ms;
  return total;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_trace_csv(const RunTrace& t, bool include_timing) {
  std::ostringstream out;
  std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "# generated " << stamp << "\n";
  out << "iteration,mean_energy,variance,best_energy,hit_rate,wall_ms\n";
  for (const TraceRow& r : t.rows) {
    out << r.iteration << ',' << format_double(r.mean_energy) << ',' << format_double(r.variance)
        << ',' << r.best_energy << ',' << format_double(r.hit_rate) << ','
        << format_double(include_timing ? r.wall_ms : 0.0) << "\n";
  }
  out << "# verdict," << verdict_name(t.verdict) << "\n";
  out << "# final_best_energy," << t.best_energy << "\n";
  out << "# final_hit_rate," << format_double(t.final_hit_rate()) << "\n";
  out << "# converged," << (t.converged ? 1 : 0) << "\n";
  out << "# exploration_units," << t.exploration_units << "\n";
  if (t.verdict == Verdict::Isomorphic) {
    out << "# mapping";
    for (int v : t.mapping.to) out << ',' << v;
    out << "\n";
  }
  return out.str();
}

void write_trace_csv(const std::string& path, const RunTrace& t, bool include_timing) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open trace file: " + path);
  f << format_trace_csv(t, include_timing);
}

}  // namespace spinmap
