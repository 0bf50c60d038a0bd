#ifndef NCC_LAYERED_BALL_HPP
#define NCC_LAYERED_BALL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ncc/instance.hpp"

namespace ncc {

// Layered Ball k-Median instance: each open center carries m concentric
// radii; a center pays mu^T r, a point pays rho^T ((d(p,x) - r_i)^+)_i to
// its cheapest open center.
struct LayeredBallInstance {
  MetricInstance base;
  int m;
  Vec rho;
  Vec mu;

  LayeredBallInstance(MetricInstance base_, Vec rho_, Vec mu_);
};

// Open centers with their radius vectors. Centers are kept sorted ascending;
// opening a facility twice keeps the coordinate-wise max of the radii.
struct LayeredBallSolution {
  std::vector<int> centers;
  std::vector<Vec> radii;

  void open_max(int facility, const Vec& r);
  const Vec* radius_for(int facility) const;
  int size() const { return static_cast<int>(centers.size()); }
};

// rho^T ((d(p,x) - r_i)^+)_i for a single point/center/radius triple.
double lb_connection_cost(const LayeredBallInstance& inst, int p, int x, const Vec& r);

// Total cost: per-point minima over open centers plus radius costs.
double lb_cost(const LayeredBallInstance& inst, const LayeredBallSolution& sol);

// Index of the open center realizing p's connection cost, ties to the
// smallest facility index.
int lb_nearest_center(const LayeredBallInstance& inst, const LayeredBallSolution& sol, int p);

// NCC(Ord, L1) -> Layered Ball k-Median with m = n layers:
// rho_i = w_i - w_{i+1} (w_{n+1} = 0) and mu_i = i * rho_i.
LayeredBallInstance reduce_ord_l1(const MetricInstance& inst, const Vec& w);

// Directions of the reduction, each non-increasing in cost.
Clustering lb_solution_to_clustering(const LayeredBallInstance& lb_inst,
                                     const LayeredBallSolution& sol);
LayeredBallSolution clustering_to_lb_solution(const LayeredBallInstance& lb_inst,
                                              const Clustering& cl);

// Sparse form of a layered-ball instance plus everything needed to map its
// solutions back to the original layer space.
struct SparseInstance {
  enum class LayerClass : std::uint8_t { Small, Large, Mid };

  LayeredBallInstance inst;  // ratios mu_i/rho_i in [1,n], sorted, m <= ceil(log2 n)

  int orig_m;
  Vec orig_rho, orig_mu;
  std::vector<LayerClass> layer_class;         // per original layer
  std::vector<int> bucket_of;                  // per original layer; -1 if dropped
  std::vector<std::vector<int>> buckets;       // per sparse layer: original layers
};

// Three stages: clamp ratios into [1,n] (recording small/large layers), sort
// by ratio, merge layers whose ratios share a power-of-two bucket. Layers
// with rho = 0 never charge connections and are dropped (warning when their
// mu is positive). Costs distort by at most a factor 2 overall.
SparseInstance sparsify(const LayeredBallInstance& inst,
                        std::vector<std::string>* warnings = nullptr);

// Maps a sparse-instance solution back to the original instance:
// bucket radii are broadcast to their member layers, large-mu layers get
// radius 0, small-mu layers get the distance of the farthest point served by
// the center. Original cost <= 2x the sparse cost.
LayeredBallSolution unsparsify_solution(const SparseInstance& sp, const LayeredBallSolution& sol);

// Geometric candidate radii for (Delta, Gamma)-canonic solutions.
struct CandidateRadii {
  double delta = 0.0;
  double gamma = 0.0;
  std::vector<double> singles;  // Delta/2^i, descending; {0} when Delta = 0
  std::vector<Vec> vectors;     // non-increasing m-vectors with mu^T r <= Gamma
};

// Candidate (Delta, Gamma) pairs: Delta ranges over point-facility distances
// plus 0, Gamma over {Delta * 2^j * sum(rho)}. Some pair admits a canonic
// optimum within factor 3 of OPT with Gamma <= 2 OPT.
std::vector<std::pair<double, double>> guess_pairs(const SparseInstance& sp);

// Materializes the canonic radius vectors for one (Delta, Gamma) pair.
// Throws SizingError when the multiset count would exceed cap.
CandidateRadii enumerate_radii(int n, int m, const Vec& mu, double delta, double gamma,
                               std::int64_t cap = 10'000'000);

}  // namespace ncc

#endif  // NCC_LAYERED_BALL_HPP
