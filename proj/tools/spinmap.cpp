#include "CLI11.hpp"

#include "spinmap/encoding.hpp"
#include "spinmap/experiment.hpp"
#include "spinmap/graph.hpp"
#include "spinmap/rbm.hpp"
#include "spinmap/trace.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace spinmap;

// Exit codes: 0 isomorphism found, 1 no mapping found, 2 degree-pruned
// non-isomorphic, 3 usage/parse/config error, 4 numeric/internal error.
constexpr int kExitIso = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitPruned = 2;
constexpr int kExitUsage = 3;
constexpr int kExitNumeric = 4;

std::string instance_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
}

struct SharedFlags {
  std::string config_path;
  int iters = 0;
  int sweeps = 0;
  int samples = 0;
  double lr = 0.0;
  std::uint64_t seed = 0;
  int reps = 0;
  std::string out_dir;
  bool no_timing = false;
};

// Registration is per verb; `with_reps` only for compare.
void add_shared(CLI::App* sub, SharedFlags& f, bool with_reps) {
  sub->add_option("--config", f.config_path, "config file (key = value with [sa]/[sqa]/[rbm]/[run] sections)");
  sub->add_option("--iters", f.iters, "annealing iterations for every backend")->check(CLI::PositiveNumber);
  sub->add_option("--sweeps", f.sweeps, "sweeps per iteration (sa, sqa)")->check(CLI::PositiveNumber);
  sub->add_option("--samples", f.samples, "samples per iteration (rbm)")->check(CLI::PositiveNumber);
  sub->add_option("--lr", f.lr, "learning rate (rbm)")->check(CLI::PositiveNumber);
  sub->add_option("--seed", f.seed, "base seed");
  if (with_reps) sub->add_option("--reps", f.reps, "repetitions per instance and backend")->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out_dir, "output directory for CSV files");
  sub->add_flag("--no-timing", f.no_timing, "zero the wall-time columns for byte-identical output");
}

// File first, explicit flags second, so flags always win.
ExperimentConfig resolve_config(const SharedFlags& f, const CLI::App* sub) {
  const auto given = [sub](const std::string& name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  ExperimentConfig cfg;
  if (given("--config")) apply_config_file(cfg, f.config_path);
  if (given("--iters")) {
    cfg.sa.n_annealing = f.iters;
    cfg.sqa.n_annealing = f.iters;
    cfg.rbm.n_iterations = f.iters;
  }
  if (given("--sweeps")) {
    cfg.sa.n_sweep = f.sweeps;
    cfg.sqa.n_sweep = f.sweeps;
  }
  if (given("--samples")) cfg.rbm.samples_per_iter = f.samples;
  if (given("--lr")) cfg.rbm.learning_rate = f.lr;
  if (given("--seed")) cfg.seed_base = f.seed;
  if (given("--reps")) cfg.reps = f.reps;
  if (given("--out")) cfg.out_dir = f.out_dir;
  if (f.no_timing) cfg.timing = false;
  if (!cfg.out_dir.empty() && cfg.out_dir != ".")
    std::filesystem::create_directories(cfg.out_dir);
  return cfg;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

int cmd_solve(const std::string& instance, const std::string& backend_str, const SharedFlags& f,
              const CLI::App* sub) {
  const auto backend = parse_backend(backend_str);
  if (!backend) {
    std::cerr << "unknown backend: " << backend_str << " (expected sa | sqa | rbm)\n";
    return kExitUsage;
  }
  const ExperimentConfig cfg = resolve_config(f, sub);
  const auto [g1, g2] = parse_graph_pair_file(instance);

  const RunTrace trace = run_backend(g1, g2, *backend, cfg, cfg.seed_base, true);

  const std::string trace_file =
      out_path(cfg, instance_stem(instance) + "_" + backend_name(*backend) + "_trace.csv");
  write_trace_csv(trace_file, trace, cfg.timing);

  switch (trace.verdict) {
    case Verdict::NonIsomorphicDegree:
      std::cout << "NON-ISOMORPHIC by degree sequence\n";
      std::cout << "trace: " << trace_file << "\n";
      return kExitPruned;
    case Verdict::Isomorphic: {
      // End-to-end guard: never print a mapping the oracle-free check rejects.
      if (!verify_mapping(g1, g2, trace.mapping)) {
        std::cerr << "internal error: solver returned an invalid mapping\n";
        return kExitNumeric;
      }
      std::cout << "ISOMORPHIC\n";
      std::cout << "mapping:";
      for (int i = 0; i < g1.n; ++i) std::cout << ' ' << i << "->" << trace.mapping.to[i];
      std::cout << "\n";
      std::cout << "trace: " << trace_file << "\n";
      return kExitIso;
    }
    case Verdict::NotFound:
      std::cout << "NO MAPPING FOUND, floor " << trace.best_energy
                << " (energy evidence only, not a non-isomorphism certificate)\n";
      std::cout << "trace: " << trace_file << "\n";
      return kExitNotFound;
  }
  return kExitNumeric;
}

int cmd_compare(const std::vector<std::string>& instances, std::vector<std::string> backend_strs,
                const SharedFlags& f, const CLI::App* sub) {
  if (backend_strs.empty()) backend_strs = {"sa", "sqa", "rbm"};
  std::vector<BackendKind> backends;
  for (const std::string& s : backend_strs) {
    const auto b = parse_backend(s);
    if (!b) {
      std::cerr << "unknown backend: " << s << " (expected sa | sqa | rbm)\n";
      return kExitUsage;
    }
    backends.push_back(*b);
  }
  if (backends.size() < 2) {
    std::cerr << "compare needs at least two backends (pass --backend twice or omit for all three)\n";
    return kExitUsage;
  }
  const ExperimentConfig cfg = resolve_config(f, sub);

  std::vector<ReportRow> report;
  for (const std::string& instance : instances) {
    const auto [g1, g2] = parse_graph_pair_file(instance);
    const auto code = build_code(g1, g2);
    const int qubits = code ? code->L : 0;

    if (code) {
      // Budget parity: every backend must spend the same number of
      // elementary exploration moves on this instance.
      const std::int64_t first = backend_budget(cfg, backends.front(), code->L);
      for (BackendKind b : backends) {
        const std::int64_t budget = backend_budget(cfg, b, code->L);
        if (budget != first) {
          std::cerr << "budget parity violation on " << instance << ": " << backend_name(backends.front())
                    << " spends " << first << " moves but " << backend_name(b) << " spends " << budget
                    << "; align iterations x sweeps/samples before comparing\n";
          return kExitUsage;
        }
      }
    }

    const std::string stem = instance_stem(instance);
    for (BackendKind b : backends) {
      std::vector<RunTrace> runs;
      runs.reserve(cfg.reps);
      for (int rep = 0; rep < cfg.reps; ++rep) {
        RunTrace t = run_backend(g1, g2, b, cfg, cfg.seed_base + static_cast<std::uint64_t>(rep), false);
        const std::string rep_file =
            out_path(cfg, stem + "_" + backend_name(b) + "_rep" + std::to_string(rep) + "_trace.csv");
        write_trace_csv(rep_file, t, cfg.timing);
        runs.push_back(std::move(t));
      }
      report.push_back(aggregate_runs(stem, b, g1, qubits, runs));
    }
  }

  const std::string body = format_report_csv(report, cfg.timing);
  write_text_file(out_path(cfg, "report.csv"), body);
  std::cout << body;
  return kExitIso;
}

int cmd_gen(const std::string& kind, int n, std::uint64_t seed, const std::string& out_file) {
  const GeneratedPair pair = gen_pair(kind, n, seed);
  if (!pair.verified)
    std::cerr << "warning: n > 10 is beyond the oracle guard; pair tagged unverified\n";
  const std::string body = format_graph_pair(pair.g1, pair.g2, pair.header);
  if (out_file.empty())
    std::cout << body;
  else
    write_text_file(out_file, body);
  return kExitIso;
}

int cmd_dump_q(const std::string& instance, const std::string& out_file) {
  const auto [g1, g2] = parse_graph_pair_file(instance);
  const auto code = build_code(g1, g2);
  if (!code) {
    std::cout << "NON-ISOMORPHIC by degree sequence\n";
    return kExitPruned;
  }
  std::ostringstream out;
  out << "# n " << code->n << "\n";
  out << "# qubits " << code->L << "\n";
  out << "# lambda_bound " << lambda_upper_bound(code->n) << "\n";
  out << "# pairs";
  for (const auto& [i, j] : code->pairs) out << ' ' << i << ':' << j;
  out << "\n";
  out << dump_q_csv(*code);
  if (out_file.empty())
    std::cout << out.str();
  else
    write_text_file(out_file, out.str());
  return kExitIso;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph isomorphism via Ising ground-state search: simulated annealing, "
               "slice-based quantum annealing, and a variational RBM annealer on one encoding"};
  app.require_subcommand(1);

  std::string instance;
  std::vector<std::string> instances;
  std::string backend = "rbm";
  std::vector<std::string> backends;
  SharedFlags solve_flags, compare_flags;
  std::string gen_kind;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out, dump_instance, dump_out;

  CLI::App* solve = app.add_subcommand("solve", "solve one instance pair with one backend");
  solve->add_option("instance", instance, "graph pair file")->required();
  solve->add_option("--backend", backend, "sa | sqa | rbm (default rbm)");
  add_shared(solve, solve_flags, false);

  CLI::App* compare = app.add_subcommand("compare", "budget-matched backend comparison over instances");
  compare->add_option("instances", instances, "graph pair files")->required();
  compare->add_option("--backend", backends, "backend, repeatable (default: all three)");
  add_shared(compare, compare_flags, true);

  CLI::App* gen = app.add_subcommand("gen", "generate an instance pair file");
  gen->add_option("kind", gen_kind, "iso-random | noniso-same-degree | petersen-vs-prism")->required();
  gen->add_option("n", gen_n, "vertex count (ignored for petersen-vs-prism)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  CLI::App* dump = app.add_subcommand("dump-q", "dump the quadratic coefficient table for a pair");
  dump->add_option("instance", dump_instance, "graph pair file")->required();
  dump->add_option("--out", dump_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(instance, backend, solve_flags, solve);
    if (compare->parsed()) return cmd_compare(instances, backends, compare_flags, compare);
    if (gen->parsed()) {
      if (gen_kind != "petersen-vs-prism" && gen_n <= 0) {
        std::cerr << "gen " << gen_kind << " needs a positive vertex count\n";
        return kExitUsage;
      }
      return cmd_gen(gen_kind, gen_n, gen_seed, gen_out);
    }
    if (dump->parsed()) return cmd_dump_q(dump_instance, dump_out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
