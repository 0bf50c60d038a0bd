#include "ncc/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include "ncc/io.hpp"

namespace ncc {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

// Portable uniform double in [0,1); mt19937_64 output mapped directly so the
// generated instances are identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec ordered_weights_of(const NormSpec& f) {
  const int n = f.arity();
  switch (f.kind()) {
    case NormKind::L1:
      return Vec::Ones(n);
    case NormKind::Linf: {
      Vec w = Vec::Zero(n);
      w[0] = 1.0;
      return w;
    }
    case NormKind::Top: {
      Vec w = Vec::Zero(n);
      w.head(f.ell()).setOnes();
      return w;
    }
    case NormKind::Ordered:
      return f.weights();
    default:
      throw std::invalid_argument("inner norm " + f.describe() +
                                  " is not an ordered norm; use sym-l1");
  }
}

int cmd_gen(int n, int num_facilities, int k, int dim, std::uint64_t seed,
            const std::string& out_path, const std::string& inner, const std::string& outer,
            std::ostream& err) {
  if (n < 1 || num_facilities < 1 || dim < 1) {
    err << "gen: sizes must be positive\n";
    return 2;
  }
  if (k < 1 || k > num_facilities) {
    err << "gen: k must satisfy 1 <= k <= facilities\n";
    return 2;
  }
  std::mt19937_64 rng(seed);
  const int total = n + num_facilities;
  Mat pts(total, dim);
  for (int i = 0; i < total; ++i) {
    for (int d = 0; d < dim; ++d) pts(i, d) = uniform01(rng);
  }
  Mat dist = Mat::Zero(total, total);
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      const double d = (pts.row(i) - pts.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  std::vector<std::string> point_ids, facility_ids;
  for (int i = 0; i < n; ++i) point_ids.push_back("p" + std::to_string(i));
  for (int i = 0; i < num_facilities; ++i) facility_ids.push_back("f" + std::to_string(i));
  MetricInstance inst(point_ids, facility_ids, std::move(dist), k);

  std::optional<NormSpec> inner_norm, outer_norm;
  if (!inner.empty()) inner_norm = parse_norm_arg(inner, n);
  if (!outer.empty()) outer_norm = parse_norm_arg(outer, k);
  const json j = instance_to_json(inst, inner_norm ? &*inner_norm : nullptr,
                                  outer_norm ? &*outer_norm : nullptr);
  std::ofstream out(out_path);
  if (!out) {
    err << "gen: cannot write " << out_path << "\n";
    return 2;
  }
  out << j.dump(2) << "\n";
  return 0;
}

std::optional<SolverReport> run_algorithm(const std::string& alg, const MetricInstance& inst,
                                          const NormSpec& f, const NormSpec& g,
                                          const SolveLbkmOptions& opts,
                                          const SubroutineRegistry& registry) {
  if (alg == "ord-l1") {
    return solve_ord_l1(inst, ordered_weights_of(f), opts);
  }
  if (alg == "sym-l1") {
    SolverReport rep = solve_sym_l1(inst, f, opts);
    rep.cost = solution_cost(inst, rep.solution, f, NormSpec::l1(inst.k()));
    return rep;
  }
  if (alg == "chig") return solve_chig(inst, f, g, opts);
  if (alg == "chif") return solve_chif(inst, f, g, registry);
  if (alg == "k-apx") return solve_k_apx(inst, f, g, registry);
  if (alg == "auto") return solve_auto(inst, f, g, registry, opts);
  return std::nullopt;
}

int cmd_solve(const std::string& path, const std::string& alg, const std::string& inner,
              const std::string& outer, int k_override, bool with_oracle,
              const std::string& out_csv, std::int64_t cap, const std::string& trace_path,
              std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err) {
  LoadedInstance loaded = load_instance_file(path);
  MetricInstance inst = loaded.inst;
  if (k_override > 0) {
    inst = MetricInstance(inst.point_ids(), inst.facility_ids(), inst.dist(), k_override,
                          /*check_metric=*/false);
  }
  const NormSpec f = inner.empty()
                         ? (loaded.inner ? *loaded.inner : NormSpec::l1(inst.n()))
                         : parse_norm_arg(inner, inst.n());
  const NormSpec g = outer.empty()
                         ? (loaded.outer ? *loaded.outer : NormSpec::l1(inst.k()))
                         : parse_norm_arg(outer, inst.k());

  std::vector<std::string> warnings;
  std::ofstream trace_file;
  SolveLbkmOptions opts;
  opts.warnings = &warnings;
  if (cap > 0) {
    opts.radius_cap = cap;
    opts.state_cap = cap;
  }
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) {
      err << "solve: cannot write trace file " << trace_path << "\n";
      return 2;
    }
    trace_file << "time,kind,facility,radius_index,point\n";
    opts.lmp.trace = &trace_file;
  }
  if (seed.has_value()) opts.rounding.random_seed = *seed;
  const SubroutineRegistry registry = SubroutineRegistry::with_defaults();

  const double t0 = now_ms();
  SolverReport rep;
  if (alg == "oracle") {
    auto [cost, sol] = exact_ncc(inst, f, g);
    rep.solution = sol;
    rep.cost = cost;
    rep.algorithm = "oracle";
    rep.proven_factor = 1.0;
    rep.chi_f = f.arity() >= 2 ? attenuation(f) : 1.0;
    rep.chi_g = g.arity() >= 2 ? attenuation(g) : 1.0;
    rep.notes = "exhaustive enumeration";
  } else {
    auto maybe = run_algorithm(alg, inst, f, g, opts, registry);
    if (!maybe.has_value()) {
      err << "solve: unknown algorithm '" << alg << "'\n";
      return 2;
    }
    rep = *maybe;
  }
  const double elapsed = now_ms() - t0;

  std::optional<double> oracle_cost;
  if (with_oracle && alg != "oracle") {
    auto [cost, sol] = exact_ncc(inst, f, g);
    oracle_cost = cost;
  }

  for (const auto& w : warnings) err << "warning: " << w << "\n";
  if (!rep.notes.empty()) err << "note: " << rep.notes << "\n";

  out << "algorithm  cost          chi_f     chi_g     bound         time_ms\n";
  out << rep.algorithm << "  " << fmt_g9(rep.cost) << "  " << fmt_g9(rep.chi_f) << "  "
      << fmt_g9(rep.chi_g) << "  " << fmt_g9(rep.proven_factor)
      << (rep.heuristic ? " (heuristic)" : "") << "  " << fmt_g9(elapsed) << "\n";
  if (oracle_cost.has_value()) {
    const double ratio = *oracle_cost > kTol ? rep.cost / *oracle_cost : 1.0;
    out << "oracle " << fmt_g9(*oracle_cost) << "  ratio " << fmt_g9(ratio) << "\n";
  }

  if (!out_csv.empty()) {
    std::ofstream csv(out_csv);
    if (!csv) {
      err << "solve: cannot write " << out_csv << "\n";
      return 2;
    }
    csv << "instance,algorithm,cost,oracle,ratio,bound,time\n";
    csv << fs::path(path).filename().string() << ',' << rep.algorithm << ','
        << fmt_g9(rep.cost) << ',';
    if (oracle_cost.has_value()) {
      const double ratio = *oracle_cost > kTol ? rep.cost / *oracle_cost : 1.0;
      csv << fmt_g9(*oracle_cost) << ',' << fmt_g9(ratio);
    } else {
      csv << ',';
    }
    csv << ',' << fmt_g9(rep.proven_factor) << ",0\n";
  }
  return 0;
}

struct BenchRow {
  std::string instance;
  std::string algorithm;
  double cost;
  double oracle;
  double ratio;
  double bound;
};

}  // namespace

std::vector<BenchAlgorithm> default_bench_algorithms() {
  const auto registry = std::make_shared<SubroutineRegistry>(SubroutineRegistry::with_defaults());
  std::vector<BenchAlgorithm> algs;
  algs.push_back({"ord-l1", [](const MetricInstance& inst, const NormSpec& f,
                               const NormSpec& g) -> std::optional<SolverReport> {
                    if (g.kind() != NormKind::L1) return std::nullopt;
                    switch (f.kind()) {
                      case NormKind::L1:
                      case NormKind::Linf:
                      case NormKind::Top:
                      case NormKind::Ordered:
                        return solve_ord_l1(inst, ordered_weights_of(f));
                      default:
                        return std::nullopt;
                    }
                  }});
  algs.push_back({"sym-l1", [](const MetricInstance& inst, const NormSpec& f,
                               const NormSpec& g) -> std::optional<SolverReport> {
                    if (g.kind() != NormKind::L1) return std::nullopt;
                    return solve_sym_l1(inst, f);
                  }});
  algs.push_back({"chig", [](const MetricInstance& inst, const NormSpec& f,
                             const NormSpec& g) -> std::optional<SolverReport> {
                    return solve_chig(inst, f, g);
                  }});
  algs.push_back({"k-apx", [registry](const MetricInstance& inst, const NormSpec& f,
                                      const NormSpec& g) -> std::optional<SolverReport> {
                    return solve_k_apx(inst, f, g, *registry);
                  }});
  return algs;
}

BenchResult bench_run(const std::vector<std::string>& instance_paths,
                      const std::vector<BenchAlgorithm>& algorithms,
                      const std::string& default_inner, const std::string& default_outer,
                      std::ostream& diagnostics) {
  std::vector<std::vector<BenchRow>> per_instance(instance_paths.size());

  auto process = [&](std::size_t idx) {
    const std::string& path = instance_paths[idx];
    LoadedInstance loaded = load_instance_file(path);
    const MetricInstance& inst = loaded.inst;
    const NormSpec f = loaded.inner ? *loaded.inner
                                    : parse_norm_arg(default_inner, inst.n());
    const NormSpec g = loaded.outer ? *loaded.outer
                                    : parse_norm_arg(default_outer, inst.k());
    auto [opt_cost, opt_sol] = exact_ncc(inst, f, g);
    const std::string name = fs::path(path).filename().string();
    for (const BenchAlgorithm& alg : algorithms) {
      const double t0 = now_ms();
      std::optional<SolverReport> rep = alg.solve(inst, f, g);
      const double elapsed = now_ms() - t0;
      if (!rep.has_value()) continue;
      const double ratio = opt_cost > kTol ? rep->cost / opt_cost
                                           : (rep->cost <= kTol ? 1.0 : rep->cost / kTol);
      per_instance[idx].push_back(
          BenchRow{name, alg.name, rep->cost, opt_cost, ratio, rep->proven_factor});
      diagnostics << "bench: " << name << " " << alg.name << " took " << fmt_g9(elapsed)
                  << " ms\n";
    }
  };

  // Worker pool over instances; rows are collected per index so the output
  // order is independent of scheduling.
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                            instance_paths.size());
  if (workers > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t idx = next.fetch_add(1);
          if (idx >= instance_paths.size()) return;
          process(idx);
        }
      });
    }
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < instance_paths.size(); ++i) process(i);
  }

  BenchResult result;
  std::ostringstream csv;
  csv << "instance,algorithm,cost,oracle,ratio,bound,time\n";
  std::map<std::string, double> max_ratio;
  for (const auto& rows : per_instance) {
    for (const BenchRow& row : rows) {
      csv << row.instance << ',' << row.algorithm << ',' << fmt_g9(row.cost) << ','
          << fmt_g9(row.oracle) << ',' << fmt_g9(row.ratio) << ',' << fmt_g9(row.bound)
          << ",0\n";
      auto [it, inserted] = max_ratio.try_emplace(row.algorithm, row.ratio);
      if (!inserted) it->second = std::max(it->second, row.ratio);
      if (row.ratio > row.bound + kTol) result.bound_violation = true;
    }
  }
  for (const auto& [alg, ratio] : max_ratio) {
    csv << "SUMMARY," << alg << ",,," << fmt_g9(ratio) << ",,0\n";
  }
  result.csv = csv.str();
  return result;
}

namespace {

int cmd_bench(const std::string& corpus_dir, const std::string& out_path,
              const std::string& inner, const std::string& outer, std::ostream& err) {
  std::vector<std::string> paths;
  if (!fs::is_directory(corpus_dir)) {
    err << "bench: not a directory: " << corpus_dir << "\n";
    return 2;
  }
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());

  const BenchResult result =
      bench_run(paths, default_bench_algorithms(), inner, outer, err);
  std::ofstream out(out_path);
  if (!out) {
    err << "bench: cannot write " << out_path << "\n";
    return 2;
  }
  out << result.csv;
  if (result.bound_violation) {
    err << "bench: observed ratio exceeds its proven factor (solver bug)\n";
    return 4;
  }
  return 0;
}

int cmd_attenuation(const std::string& norm_text, int d, std::ostream& out, std::ostream& err) {
  if (d < 2) {
    err << "attenuation: undefined for d < 2\n";
    return 2;
  }
  const NormSpec norm = parse_norm_arg(norm_text, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", attenuation(norm));
  out << buf << "\n";
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clustering under cluster-aware norm objectives"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random Euclidean instance");
  int gen_n = 0, gen_f = 0, gen_k = 0, gen_dim = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_out, gen_inner, gen_outer;
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--facilities", gen_f, "number of facilities")->required();
  gen->add_option("--k", gen_k, "center budget")->required();
  gen->add_option("--dim", gen_dim, "coordinate dimension (default 2)");
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "output instance file")->required();
  gen->add_option("--inner", gen_inner, "embed an inner norm (e.g. l1, top:2)");
  gen->add_option("--outer", gen_outer, "embed an outer norm");

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string solve_path, solve_alg = "auto", solve_inner, solve_outer, solve_out, solve_trace;
  int solve_k = 0;
  bool solve_oracle = false;
  std::int64_t solve_cap = 0;
  std::uint64_t solve_seed = 0;
  solve->add_option("instance", solve_path, "instance JSON file")->required();
  solve->add_option("--alg", solve_alg,
                    "algorithm: auto|ord-l1|sym-l1|chig|chif|k-apx|oracle");
  solve->add_option("--inner", solve_inner, "inner norm (overrides embedded)");
  solve->add_option("--outer", solve_outer, "outer norm (overrides embedded)");
  solve->add_option("--k", solve_k, "override the instance budget");
  solve->add_flag("--oracle", solve_oracle, "also report the exhaustive optimum and ratio");
  solve->add_option("--out", solve_out, "write a CSV row (time column fixed at 0)");
  solve->add_option("--cap", solve_cap, "enumeration cap for candidate radii/states");
  solve->add_option("--trace", solve_trace, "write the dual-ascent event trace CSV here");
  auto* seed_opt =
      solve->add_option("--seed", solve_seed, "enable seeded randomized bi-point rounding");

  // bench
  auto* bench = app.add_subcommand("bench", "run the algorithm table over a corpus");
  std::string bench_dir, bench_out, bench_inner = "l1", bench_outer = "l1";
  std::uint64_t bench_seed = 0;
  bench->add_option("corpus", bench_dir, "directory of instance JSON files")->required();
  bench->add_option("--out", bench_out, "output CSV path")->required();
  bench->add_option("--inner", bench_inner, "inner norm for instances without embedded norms");
  bench->add_option("--outer", bench_outer, "outer norm for instances without embedded norms");
  bench->add_option("--seed", bench_seed, "recorded in the run config; algorithms are deterministic");

  // attenuation
  auto* att = app.add_subcommand("attenuation", "print the attenuation of a norm");
  std::string att_norm;
  int att_d = 0;
  att->add_option("--norm", att_norm, "norm spec (e.g. top:2 or JSON)")->required();
  att->add_option("--d", att_d, "arity")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_n, gen_f, gen_k, gen_dim, gen_seed, gen_out, gen_inner, gen_outer, err);
    }
    if (solve->parsed()) {
      return cmd_solve(solve_path, solve_alg, solve_inner, solve_outer, solve_k, solve_oracle,
                       solve_out, solve_cap, solve_trace,
                       seed_given ? std::optional<std::uint64_t>(solve_seed) : std::nullopt, out,
                       err);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_dir, bench_out, bench_inner, bench_outer, err);
    }
    if (att->parsed()) {
      return cmd_attenuation(att_norm, att_d, out, err);
    }
  } catch (const SizingError& e) {
    err << "aborted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ncc
