#ifndef NCC_META_HPP
#define NCC_META_HPP

#include <functional>
#include <optional>
#include <string>

#include "ncc/bipoint.hpp"
#include "ncc/oracle.hpp"

namespace ncc {

struct SolverReport {
  Clustering solution;
  double cost = 0.0;        // recomputed from the solution under (f,g)
  std::string algorithm;
  double proven_factor = 0.0;  // bound instantiated at (n, k, chi_f, chi_g)
  bool heuristic = false;      // factor conditional on an unproven subroutine
  double chi_f = 1.0;          // attenuation; 1.0 by convention at arity 1
  double chi_g = 1.0;
  std::string notes;
};

// Result of a pluggable center-selection subroutine. proven_factor is absent
// when the implementation carries no guarantee.
struct SubroutineResult {
  std::vector<int> centers;  // at most k
  std::optional<double> proven_factor;
  std::string note;
};

// Pluggable prior-work solvers the paperless baselines stand in for:
// a norm k-clustering solver (min over X of f(nearest distances)) and an
// inner-Linf solver for arbitrary outer norms.
struct SubroutineRegistry {
  std::function<SubroutineResult(const MetricInstance&, const NormSpec&)> mnkc_solver;
  std::function<SubroutineResult(const MetricInstance&, const NormSpec&)> linf_sym_solver;

  // mnkc: exhaustive when the subset count is small, single-swap local
  // search otherwise. linf_sym: greedy farthest-point supplier selection
  // (factor 3 when the outer norm is Linf, heuristic otherwise).
  static SubroutineRegistry with_defaults();
};

// NCC(Ord, L1) via the layered-ball pipeline; factor 216 log2 n + 360.
SolverReport solve_ord_l1(const MetricInstance& inst, const Vec& w,
                          const SolveLbkmOptions& opts = {});

// NCC(Sym, L1): ordered surrogate, then the Ord-L1 pipeline, scored under f.
SolverReport solve_sym_l1(const MetricInstance& inst, const NormSpec& f,
                          const SolveLbkmOptions& opts = {});

// Runs the Sym-L1 solver ignoring g; factor gains k^{1-chi_g}.
SolverReport solve_chig(const MetricInstance& inst, const NormSpec& f, const NormSpec& g,
                        const SolveLbkmOptions& opts = {});

// Runs the registered inner-Linf solver ignoring f; factor gains n^{chi_f}.
SolverReport solve_chif(const MetricInstance& inst, const NormSpec& f, const NormSpec& g,
                        const SubroutineRegistry& registry);

// Reduces to cluster-oblivious minimum-norm k-clustering; factor O(k).
SolverReport solve_k_apx(const MetricInstance& inst, const NormSpec& f, const NormSpec& g,
                         const SubroutineRegistry& registry);

// Runs the chig, chif and k-apx candidates and keeps the cheapest solution.
SolverReport solve_auto(const MetricInstance& inst, const NormSpec& f, const NormSpec& g,
                        const SubroutineRegistry& registry, const SolveLbkmOptions& opts = {});

}  // namespace ncc

#endif  // NCC_META_HPP
