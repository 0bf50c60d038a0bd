#ifndef NCC_BIPOINT_HPP
#define NCC_BIPOINT_HPP

#include <optional>

#include "ncc/primal_dual.hpp"

namespace ncc {

// Two facility-location solutions straddling the cardinality budget,
// |X1| <= k < |X2|, with the convex coefficients hitting k exactly:
// a = (|X2|-k)/(|X2|-|X1|), b = (k-|X1|)/(|X2|-|X1|).
struct BiPoint {
  LayeredBallSolution sol1;
  LayeredBallSolution sol2;
  double a = 1.0;
  double b = 0.0;
  double cost1 = 0.0;
  double cost2 = 0.0;
};

// Either a bi-point, or a solution that is already feasible and within the
// Lagrangean bound (zero opening cost opened at most k facilities, or the
// instance is degenerate).
struct BiPointResult {
  std::optional<LayeredBallSolution> direct;
  std::optional<BiPoint> bipoint;
};

// Bisects the opening cost until the interval is below
// delta_min / ((2 log2 n + 3) |F|), keeping the tightest pair of solutions
// on either side of k. The high endpoint is repaired to a single facility
// when needed. Combined cost a*cost1 + b*cost2 <= (2 log2 n + 4) OPT^{D,G}.
BiPointResult binary_search_bipoint(const LayeredBallInstance& sparse,
                                    const CandidateRadii& radii,
                                    std::int64_t state_cap = 50'000'000,
                                    const LmpOptions& lmp = {});

// Grouping of the large solution's facilities around the small one, with the
// per-group radius aggregates used by the knapsack rounding.
struct GroupStructure {
  std::vector<int> cl1_of_x2;              // per sol2 center: index into sol1.centers
  std::vector<int> cl1_of_p;               // per point: index into sol1.centers
  std::vector<int> cl2_of_p;               // per point: index into sol2.centers
  std::vector<std::vector<int>> groups;    // per sol1 center: sol2-center indices
  std::vector<Vec> sum_radii;              // S(x): coordinate-wise sum over the group
  std::vector<Vec> max_radii;              // M(x): coordinate-wise max over the group
  std::vector<Vec> inflated;               // r1'(x) = r1(x) + 2 M(x)
};

// Connection cost between two balls: rho^T ((d - ra_i - rb_i)^+)_i.
double ball_pair_cost(const LayeredBallInstance& inst, double dist, const Vec& ra, const Vec& rb);

GroupStructure build_groups(const LayeredBallInstance& sparse, const BiPoint& bi);

// Fractional knapsack with item weights that may be zero or negative
// (groups of size <= 1 relax the budget). Nonpositive-weight items are taken
// outright; the rest greedily by saving density. At most one fractional u.
struct KnapsackLpSolution {
  Vec u;
  double value = 0.0;
  int special = -1;  // index of the unique fractional item, -1 if none
};

KnapsackLpSolution solve_knapsack_lp(const Vec& saving, const std::vector<double>& weight,
                                     double budget);

struct RoundingOptions {
  // When set, the special group's extra facilities are sampled uniformly
  // instead of picked greedily by saving.
  std::optional<std::uint64_t> random_seed;
};

// Rounds a bi-point to a feasible solution: per group either the sol1 center
// with inflated radii or the whole group with sol2 radii, the unique
// fractional group getting both its center and ceil(u|G|)-2 greedy members.
// Opens at most k facilities.
LayeredBallSolution round_bipoint(const LayeredBallInstance& sparse, const BiPoint& bi,
                                  const RoundingOptions& opts = {});

struct SolveLbkmOptions {
  std::int64_t radius_cap = 10'000'000;
  std::int64_t state_cap = 50'000'000;
  std::vector<std::string>* warnings = nullptr;
  RoundingOptions rounding;
  LmpOptions lmp;
};

// Pipeline for one guessed pair: binary search, then rounding.
LayeredBallSolution solve_lbkm_for_guess(const LayeredBallInstance& sparse,
                                         const CandidateRadii& radii,
                                         const RoundingOptions& opts = {},
                                         std::int64_t state_cap = 50'000'000,
                                         const LmpOptions& lmp = {});

// Full Layered Ball k-Median approximation: sparsify, try every guessed
// (Delta, Gamma), round, map back, keep the cheapest. Overall factor
// 216 log2 n + 360 against the unrestricted optimum.
LayeredBallSolution solve_lbkm(const LayeredBallInstance& inst, const SolveLbkmOptions& opts = {});

}  // namespace ncc

#endif  // NCC_BIPOINT_HPP
