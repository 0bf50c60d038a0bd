#include "ncc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncc {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

// Visits every k-subset of {0..count-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int count, int k, Fn&& fn) {
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    fn(pick);
    int pos = k - 1;
    while (pos >= 0 && pick[pos] == count - k + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
  }
}

}  // namespace

std::pair<double, Clustering> exact_ncc(const MetricInstance& inst, const NormSpec& f,
                                        const NormSpec& g, const OracleBudget& budget) {
  const int n = inst.n();
  const int size = std::min(inst.k(), inst.num_facilities());
  const double subsets = binom(inst.num_facilities(), size);
  if (subsets > static_cast<double>(budget.max_center_subsets)) {
    throw SizingError("exact_ncc center subsets", subsets,
                      static_cast<double>(budget.max_center_subsets));
  }
  const double assignments = subsets * std::pow(static_cast<double>(size), n);
  if (assignments > static_cast<double>(budget.max_assignments)) {
    throw SizingError("exact_ncc assignments", assignments,
                      static_cast<double>(budget.max_assignments));
  }

  double best = std::numeric_limits<double>::infinity();
  Clustering best_sol;
  Vec cluster_costs = Vec::Zero(inst.k());
  for_each_subset(inst.num_facilities(), size, [&](const std::vector<int>& X) {
    std::vector<int> sigma(n, 0);
    while (true) {
      cluster_costs.setZero();
      Vec dv = Vec::Zero(n);
      for (int ci = 0; ci < size; ++ci) {
        dv.setZero();
        for (int p = 0; p < n; ++p) {
          if (sigma[p] == ci) dv[p] = inst.d_pf(p, X[ci]);
        }
        cluster_costs[ci] = f(dv);
      }
      const double cost = g(cluster_costs);
      if (cost < best - kTol) {
        best = cost;
        best_sol.centers = X;
        best_sol.assignment.resize(n);
        for (int p = 0; p < n; ++p) best_sol.assignment[p] = X[sigma[p]];
      }
      int pos = n - 1;
      while (pos >= 0 && sigma[pos] == size - 1) {
        sigma[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++sigma[pos];
    }
  });
  return {best, best_sol};
}

std::pair<double, Clustering> exact_ncc_nearest(const MetricInstance& inst, const NormSpec& f,
                                                const NormSpec& g, const OracleBudget& budget) {
  const int size = std::min(inst.k(), inst.num_facilities());
  const double subsets = binom(inst.num_facilities(), size);
  if (subsets > static_cast<double>(budget.max_center_subsets)) {
    throw SizingError("exact_ncc_nearest center subsets", subsets,
                      static_cast<double>(budget.max_center_subsets));
  }
  double best = std::numeric_limits<double>::infinity();
  Clustering best_sol;
  for_each_subset(inst.num_facilities(), size, [&](const std::vector<int>& X) {
    Clustering sol = nearest_assignment(inst, X);
    const double cost = solution_cost(inst, sol, f, g);
    if (cost < best - kTol) {
      best = cost;
      best_sol = sol;
    }
  });
  return {best, best_sol};
}

std::pair<double, LayeredBallSolution> exact_lbkm(const LayeredBallInstance& inst,
                                                  const OracleBudget& budget,
                                                  const CandidateRadii* candidates) {
  const MetricInstance& base = inst.base;
  const int n = base.n();
  const int m = inst.m;
  const int size = std::min(base.k(), base.num_facilities());
  const double subsets = binom(base.num_facilities(), size);
  if (subsets > static_cast<double>(budget.max_center_subsets)) {
    throw SizingError("exact_lbkm center subsets", subsets,
                      static_cast<double>(budget.max_center_subsets));
  }
  const double assignments = subsets * std::pow(static_cast<double>(size), n);
  if (assignments > static_cast<double>(budget.max_assignments)) {
    throw SizingError("exact_lbkm assignments", assignments,
                      static_cast<double>(budget.max_assignments));
  }
  if (candidates != nullptr) {
    const double states =
        assignments * static_cast<double>(candidates->vectors.size()) * size;
    if (states > static_cast<double>(budget.max_radius_vectors)) {
      throw SizingError("exact_lbkm canonic radius states", states,
                        static_cast<double>(budget.max_radius_vectors));
    }
  }

  double best = std::numeric_limits<double>::infinity();
  LayeredBallSolution best_sol;

  // For a fixed assignment the optimal radii decompose per facility (and,
  // unrestricted, per layer); enumerate assignments and optimize radii.
  for_each_subset(base.num_facilities(), size, [&](const std::vector<int>& X) {
    std::vector<int> sigma(n, 0);
    std::vector<double> dists;
    while (true) {
      double total = 0.0;
      std::vector<Vec> radii(size);
      for (int ci = 0; ci < size && total < best + kTol; ++ci) {
        const int x = X[ci];
        dists.clear();
        for (int p = 0; p < n; ++p) {
          if (sigma[p] == ci) dists.push_back(base.d_pf(p, x));
        }
        if (candidates == nullptr) {
          Vec r = Vec::Zero(m);
          for (int i = 0; i < m; ++i) {
            double layer_best = std::numeric_limits<double>::infinity();
            double layer_r = 0.0;
            auto eval_radius = [&](double rad) {
              double c = inst.mu[i] * rad;
              for (double d : dists) c += inst.rho[i] * std::max(0.0, d - rad);
              if (c < layer_best - kTol) {
                layer_best = c;
                layer_r = rad;
              }
            };
            eval_radius(0.0);
            for (double d : dists) eval_radius(d);
            r[i] = layer_r;
            total += layer_best;
          }
          radii[ci] = r;
        } else {
          double fac_best = std::numeric_limits<double>::infinity();
          const Vec* fac_r = nullptr;
          for (const Vec& r : candidates->vectors) {
            double c = inst.mu.dot(r);
            for (double d : dists) {
              for (int i = 0; i < m; ++i) c += inst.rho[i] * std::max(0.0, d - r[i]);
            }
            if (c < fac_best - kTol) {
              fac_best = c;
              fac_r = &r;
            }
          }
          if (fac_r == nullptr) {
            total = std::numeric_limits<double>::infinity();
            break;
          }
          radii[ci] = *fac_r;
          total += fac_best;
        }
      }
      if (total < best - kTol) {
        best = total;
        best_sol = LayeredBallSolution{};
        for (int ci = 0; ci < size; ++ci) best_sol.open_max(X[ci], radii[ci]);
      }
      int pos = n - 1;
      while (pos >= 0 && sigma[pos] == size - 1) {
        sigma[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++sigma[pos];
    }
  });
  return {best, best_sol};
}

std::pair<double, std::vector<int>> exact_mnkc(const MetricInstance& inst, const NormSpec& f,
                                               const OracleBudget& budget) {
  const int n = inst.n();
  const int size = std::min(inst.k(), inst.num_facilities());
  const double subsets = binom(inst.num_facilities(), size);
  if (subsets > static_cast<double>(budget.max_center_subsets)) {
    throw SizingError("exact_mnkc center subsets", subsets,
                      static_cast<double>(budget.max_center_subsets));
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_X;
  Vec d(n);
  for_each_subset(inst.num_facilities(), size, [&](const std::vector<int>& X) {
    for (int p = 0; p < n; ++p) {
      double mn = inst.d_pf(p, X[0]);
      for (int x : X) mn = std::min(mn, inst.d_pf(p, x));
      d[p] = mn;
    }
    const double cost = f(d);
    if (cost < best - kTol) {
      best = cost;
      best_X = X;
    }
  });
  return {best, best_X};
}

}  // namespace ncc
