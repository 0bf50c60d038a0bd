#ifndef NCC_ORACLE_HPP
#define NCC_ORACLE_HPP

#include <optional>
#include <utility>

#include "ncc/layered_ball.hpp"

namespace ncc {

// Enumeration caps for the exact solvers. An exceeded cap aborts with a
// SizingError carrying the attempted state count; results are never
// truncated silently. Defaults fit n <= 6, |F| <= 5, k <= 3, m <= 3.
struct OracleBudget {
  std::int64_t max_center_subsets = 100'000;
  std::int64_t max_assignments = 2'000'000;
  std::int64_t max_radius_vectors = 10'000'000;
};

// Exact NCC(f,g) optimum by enumerating every center subset and every
// assignment. Assignments are NOT restricted to nearest centers; under
// cluster-aware objectives a point may profitably join a farther cluster.
std::pair<double, Clustering> exact_ncc(const MetricInstance& inst, const NormSpec& f,
                                        const NormSpec& g, const OracleBudget& budget = {});

// Same enumeration with assignments forced to nearest centers; used to
// witness that cluster-aware assignments can beat nearest ones.
std::pair<double, Clustering> exact_ncc_nearest(const MetricInstance& inst, const NormSpec& f,
                                                const NormSpec& g, const OracleBudget& budget = {});

// Exact Layered Ball k-Median optimum. Without candidate radii, per-layer
// radii range over {0} and the distances of assigned points (an optimal
// radius is always one of these). With candidates, radii are restricted to
// the canonic set, yielding OPT^{Delta,Gamma}; the cost is +infinity when
// the canonic set admits no solution.
std::pair<double, LayeredBallSolution> exact_lbkm(const LayeredBallInstance& inst,
                                                  const OracleBudget& budget = {},
                                                  const CandidateRadii* candidates = nullptr);

// Exact cluster-oblivious minimum-norm k-clustering: min over |X| <= k of
// f((dist(p,X))_p).
std::pair<double, std::vector<int>> exact_mnkc(const MetricInstance& inst, const NormSpec& f,
                                               const OracleBudget& budget = {});

}  // namespace ncc

#endif  // NCC_ORACLE_HPP
