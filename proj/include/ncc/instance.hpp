#ifndef NCC_INSTANCE_HPP
#define NCC_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ncc/common.hpp"
#include "ncc/norms.hpp"

namespace ncc {

// First metric defect found while scanning a distance matrix.
struct MetricViolation {
  enum class Kind { NotSquare, Negative, Diagonal, Asymmetry, Triangle };
  Kind kind;
  int i = -1;
  int j = -1;
  int via = -1;  // witness midpoint for triangle violations
  std::string describe() const;
};

// Scans for a violation of symmetry, zero diagonal, nonnegativity or the
// triangle inequality (tolerance kTol). Returns std::nullopt when the matrix
// is a metric.
std::optional<MetricViolation> validate_metric(const Mat& dist);

// A metric clustering instance: points, candidate facilities, pairwise
// distances over P u F, and the center budget k. The matrix is the source of
// truth; rows/cols are ordered points first, facilities after.
class MetricInstance {
 public:
  MetricInstance(std::vector<std::string> point_ids, std::vector<std::string> facility_ids,
                 Mat dist, int k, bool check_metric = true);

  int n() const { return static_cast<int>(point_ids_.size()); }
  int num_facilities() const { return static_cast<int>(facility_ids_.size()); }
  int k() const { return k_; }

  const std::vector<std::string>& point_ids() const { return point_ids_; }
  const std::vector<std::string>& facility_ids() const { return facility_ids_; }
  const Mat& dist() const { return dist_; }

  double d_pf(int p, int f) const { return dist_(p, n() + f); }
  double d_pp(int p, int q) const { return dist_(p, q); }
  double d_ff(int f, int g) const { return dist_(n() + f, n() + g); }

  // Largest / smallest positive point-facility distance; 0 when none positive.
  double max_pf_distance() const;
  double min_positive_pf_distance() const;

 private:
  std::vector<std::string> point_ids_;
  std::vector<std::string> facility_ids_;
  Mat dist_;
  int k_;
};

// A solution: at most k open centers plus a total assignment of points to
// open centers. Centers are facility indices, kept sorted ascending.
struct Clustering {
  std::vector<int> centers;
  std::vector<int> assignment;  // per point, a member of centers
};

// Throws std::invalid_argument when the clustering is malformed for inst.
void validate_clustering(const MetricInstance& inst, const Clustering& sol);

// The cluster cost vector of center x: coordinate p is dist(p,x) when p is
// assigned to x and 0 otherwise.
Vec cluster_distance_vector(const MetricInstance& inst, const Clustering& sol, int x);

// g applied to the per-cluster f-costs, zero-padded to arity k when fewer
// than k centers are open. f must have arity n, g arity k.
double solution_cost(const MetricInstance& inst, const Clustering& sol, const NormSpec& f,
                     const NormSpec& g);

// Assign every point to its nearest member of X, ties to the smallest
// facility index.
Clustering nearest_assignment(const MetricInstance& inst, const std::vector<int>& X);

}  // namespace ncc

#endif  // NCC_INSTANCE_HPP
