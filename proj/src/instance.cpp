#include "ncc/instance.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace ncc {

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::NotSquare:
      os << "distance matrix is not square";
      break;
    case Kind::Negative:
      os << "negative distance at (" << i << "," << j << ")";
      break;
    case Kind::Diagonal:
      os << "nonzero diagonal at (" << i << "," << i << ")";
      break;
    case Kind::Asymmetry:
      os << "asymmetric entries at (" << i << "," << j << ")";
      break;
    case Kind::Triangle:
      os << "triangle violation: d(" << i << "," << j << ") > d(" << i << "," << via << ") + d("
         << via << "," << j << ")";
      break;
  }
  return os.str();
}

std::optional<MetricViolation> validate_metric(const Mat& dist) {
  if (dist.rows() != dist.cols()) {
    throw std::invalid_argument("validate_metric: matrix must be square");
  }
  const int s = static_cast<int>(dist.rows());
  for (int i = 0; i < s; ++i) {
    if (std::abs(dist(i, i)) > kTol) {
      return MetricViolation{MetricViolation::Kind::Diagonal, i, i, -1};
    }
    for (int j = 0; j < s; ++j) {
      if (dist(i, j) < -kTol) {
        return MetricViolation{MetricViolation::Kind::Negative, i, j, -1};
      }
    }
  }
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      if (std::abs(dist(i, j) - dist(j, i)) > kTol) {
        return MetricViolation{MetricViolation::Kind::Asymmetry, i, j, -1};
      }
    }
  }
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      for (int via = 0; via < s; ++via) {
        if (dist(i, j) > dist(i, via) + dist(via, j) + kTol) {
          return MetricViolation{MetricViolation::Kind::Triangle, i, j, via};
        }
      }
    }
  }
  return std::nullopt;
}

MetricInstance::MetricInstance(std::vector<std::string> point_ids,
                               std::vector<std::string> facility_ids, Mat dist, int k,
                               bool check_metric)
    : point_ids_(std::move(point_ids)),
      facility_ids_(std::move(facility_ids)),
      dist_(std::move(dist)),
      k_(k) {
  const int total = n() + num_facilities();
  if (n() < 1) throw std::invalid_argument("instance needs at least one point");
  if (num_facilities() < 1) throw std::invalid_argument("instance needs at least one facility");
  if (dist_.rows() != total || dist_.cols() != total) {
    throw std::invalid_argument("distance matrix must be (n+|F|) x (n+|F|)");
  }
  if (k_ < 1 || k_ > num_facilities()) {
    throw std::invalid_argument("k must satisfy 1 <= k <= |F|");
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& id : point_ids_) {
      if (!seen.insert(id).second) throw std::invalid_argument("duplicate id: " + id);
    }
    for (const auto& id : facility_ids_) {
      if (!seen.insert(id).second) throw std::invalid_argument("duplicate id: " + id);
    }
  }
  if (check_metric) {
    if (auto bad = validate_metric(dist_)) {
      throw std::invalid_argument("distance matrix is not a metric: " + bad->describe());
    }
  }
}

double MetricInstance::max_pf_distance() const {
  double mx = 0.0;
  for (int p = 0; p < n(); ++p) {
    for (int f = 0; f < num_facilities(); ++f) mx = std::max(mx, d_pf(p, f));
  }
  return mx;
}

double MetricInstance::min_positive_pf_distance() const {
  double mn = std::numeric_limits<double>::infinity();
  for (int p = 0; p < n(); ++p) {
    for (int f = 0; f < num_facilities(); ++f) {
      const double d = d_pf(p, f);
      if (d > kTol) mn = std::min(mn, d);
    }
  }
  return std::isfinite(mn) ? mn : 0.0;
}

void validate_clustering(const MetricInstance& inst, const Clustering& sol) {
  if (sol.centers.empty()) throw std::invalid_argument("clustering has no centers");
  if (static_cast<int>(sol.centers.size()) > inst.k()) {
    throw std::invalid_argument("clustering opens more than k centers");
  }
  for (int x : sol.centers) {
    if (x < 0 || x >= inst.num_facilities()) {
      throw std::invalid_argument("unknown facility index " + std::to_string(x));
    }
  }
  if (!std::is_sorted(sol.centers.begin(), sol.centers.end())) {
    throw std::invalid_argument("centers must be sorted ascending");
  }
  if (static_cast<int>(sol.assignment.size()) != inst.n()) {
    throw std::invalid_argument("assignment must cover every point");
  }
  for (int a : sol.assignment) {
    if (!std::binary_search(sol.centers.begin(), sol.centers.end(), a)) {
      throw std::invalid_argument("assignment targets a closed facility");
    }
  }
}

Vec cluster_distance_vector(const MetricInstance& inst, const Clustering& sol, int x) {
  if (!std::binary_search(sol.centers.begin(), sol.centers.end(), x)) {
    throw std::invalid_argument("cluster_distance_vector: facility " + std::to_string(x) +
                                " is not an open center");
  }
  Vec v = Vec::Zero(inst.n());
  for (int p = 0; p < inst.n(); ++p) {
    if (sol.assignment[p] == x) v[p] = inst.d_pf(p, x);
  }
  return v;
}

double solution_cost(const MetricInstance& inst, const Clustering& sol, const NormSpec& f,
                     const NormSpec& g) {
  validate_clustering(inst, sol);
  if (f.arity() != inst.n()) {
    throw std::invalid_argument("inner norm arity must equal n");
  }
  if (g.arity() != inst.k()) {
    throw std::invalid_argument("outer norm arity must equal k");
  }
  Vec cluster_costs = Vec::Zero(inst.k());
  for (std::size_t i = 0; i < sol.centers.size(); ++i) {
    cluster_costs[static_cast<Eigen::Index>(i)] =
        f(cluster_distance_vector(inst, sol, sol.centers[i]));
  }
  return g(cluster_costs);
}

Clustering nearest_assignment(const MetricInstance& inst, const std::vector<int>& X) {
  if (X.empty()) throw std::invalid_argument("nearest_assignment: empty center set");
  std::vector<int> centers = X;
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  for (int x : centers) {
    if (x < 0 || x >= inst.num_facilities()) {
      throw std::invalid_argument("nearest_assignment: unknown facility " + std::to_string(x));
    }
  }
  Clustering sol;
  sol.centers = centers;
  sol.assignment.resize(inst.n());
  for (int p = 0; p < inst.n(); ++p) {
    int best = centers.front();
    double best_d = inst.d_pf(p, best);
    for (int x : centers) {
      const double d = inst.d_pf(p, x);
      if (d < best_d - kTol) {
        best = x;
        best_d = d;
      }
    }
    sol.assignment[p] = best;
  }
  return sol;
}

}  // namespace ncc
