#ifndef NCC_CLI_HPP
#define NCC_CLI_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ncc/meta.hpp"

namespace ncc {

// One bench-table algorithm: how to solve and which instantiated bound the
// observed ratio is held against. Returns no report (nullopt) when the
// algorithm does not apply to the given norms.
struct BenchAlgorithm {
  std::string name;
  std::function<std::optional<SolverReport>(const MetricInstance&, const NormSpec&,
                                            const NormSpec&)>
      solve;
};

// The production algorithm set: ord-l1 (ordered inner norms only), sym-l1,
// chig and k-apx with default subroutines.
std::vector<BenchAlgorithm> default_bench_algorithms();

struct BenchResult {
  std::string csv;           // full file contents, deterministic bytes
  bool bound_violation = false;
};

// Runs every (instance, algorithm) pair against the exhaustive oracle and
// renders the CSV table plus per-algorithm max-ratio summary rows. The time
// column is fixed at 0 so repeated runs are byte-identical; wall times go to
// diagnostics.
BenchResult bench_run(const std::vector<std::string>& instance_paths,
                      const std::vector<BenchAlgorithm>& algorithms,
                      const std::string& default_inner, const std::string& default_outer,
                      std::ostream& diagnostics);

// Entry point behind the ncc binary; returns the process exit code.
// 0 = ok, 2 = bad input or usage, 3 = budget/cap abort, 4 = bench bound
// violation.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ncc

#endif  // NCC_CLI_HPP
