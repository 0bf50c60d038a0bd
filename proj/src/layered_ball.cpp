#include "ncc/layered_ball.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace ncc {

namespace {

int ceil_log2(int n) {
  int m = 0;
  while ((1 << m) < n) ++m;
  return m;
}

}  // namespace

LayeredBallInstance::LayeredBallInstance(MetricInstance base_, Vec rho_, Vec mu_)
    : base(std::move(base_)), m(static_cast<int>(rho_.size())), rho(std::move(rho_)),
      mu(std::move(mu_)) {
  if (mu.size() != rho.size()) {
    throw std::invalid_argument("rho and mu must have the same length");
  }
  for (int i = 0; i < m; ++i) {
    if (rho[i] < 0.0 || mu[i] < 0.0) {
      throw std::invalid_argument("rho and mu must be nonnegative");
    }
  }
}

void LayeredBallSolution::open_max(int facility, const Vec& r) {
  auto it = std::lower_bound(centers.begin(), centers.end(), facility);
  if (it != centers.end() && *it == facility) {
    Vec& cur = radii[static_cast<std::size_t>(it - centers.begin())];
    if (cur.size() != r.size()) {
      throw std::invalid_argument("open_max: radius length mismatch");
    }
    cur = cur.cwiseMax(r);
    return;
  }
  const auto pos = it - centers.begin();
  centers.insert(it, facility);
  radii.insert(radii.begin() + pos, r);
}

const Vec* LayeredBallSolution::radius_for(int facility) const {
  auto it = std::lower_bound(centers.begin(), centers.end(), facility);
  if (it == centers.end() || *it != facility) return nullptr;
  return &radii[static_cast<std::size_t>(it - centers.begin())];
}

double lb_connection_cost(const LayeredBallInstance& inst, int p, int x, const Vec& r) {
  if (r.size() != inst.m) throw std::invalid_argument("radius vector length mismatch");
  if (p < 0 || p >= inst.base.n()) throw std::invalid_argument("unknown point index");
  if (x < 0 || x >= inst.base.num_facilities()) throw std::invalid_argument("unknown facility");
  const double d = inst.base.d_pf(p, x);
  double cost = 0.0;
  for (int i = 0; i < inst.m; ++i) cost += inst.rho[i] * std::max(0.0, d - r[i]);
  return cost;
}

int lb_nearest_center(const LayeredBallInstance& inst, const LayeredBallSolution& sol, int p) {
  if (sol.centers.empty()) throw std::invalid_argument("solution has no centers");
  int best = sol.centers.front();
  double best_cost = lb_connection_cost(inst, p, best, sol.radii.front());
  for (std::size_t i = 1; i < sol.centers.size(); ++i) {
    const double c = lb_connection_cost(inst, p, sol.centers[i], sol.radii[i]);
    if (c < best_cost - kTol) {
      best = sol.centers[i];
      best_cost = c;
    }
  }
  return best;
}

double lb_cost(const LayeredBallInstance& inst, const LayeredBallSolution& sol) {
  if (sol.centers.empty()) throw std::invalid_argument("lb_cost: solution has no centers");
  double total = 0.0;
  for (int p = 0; p < inst.base.n(); ++p) {
    double best = lb_connection_cost(inst, p, sol.centers[0], sol.radii[0]);
    for (std::size_t i = 1; i < sol.centers.size(); ++i) {
      best = std::min(best, lb_connection_cost(inst, p, sol.centers[i], sol.radii[i]));
    }
    total += best;
  }
  for (const Vec& r : sol.radii) total += inst.mu.dot(r);
  return total;
}

LayeredBallInstance reduce_ord_l1(const MetricInstance& inst, const Vec& w) {
  const int n = inst.n();
  if (w.size() != n) throw std::invalid_argument("weight vector must have length n");
  for (int i = 0; i + 1 < n; ++i) {
    if (w[i] + kTol < w[i + 1]) throw std::invalid_argument("weights must be non-increasing");
  }
  for (int i = 0; i < n; ++i) {
    if (w[i] < 0.0) throw std::invalid_argument("weights must be nonnegative");
  }
  Vec rho(n), mu(n);
  for (int i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? w[i + 1] : 0.0;
    rho[i] = std::max(0.0, w[i] - next);
    mu[i] = rho[i] * (i + 1);
  }
  return LayeredBallInstance(inst, rho, mu);
}

Clustering lb_solution_to_clustering(const LayeredBallInstance& lb_inst,
                                     const LayeredBallSolution& sol) {
  if (sol.centers.empty()) throw std::invalid_argument("solution has no centers");
  Clustering cl;
  cl.centers = sol.centers;
  cl.assignment.resize(lb_inst.base.n());
  for (int p = 0; p < lb_inst.base.n(); ++p) {
    cl.assignment[p] = lb_nearest_center(lb_inst, sol, p);
  }
  return cl;
}

LayeredBallSolution clustering_to_lb_solution(const LayeredBallInstance& lb_inst,
                                              const Clustering& cl) {
  validate_clustering(lb_inst.base, cl);
  if (lb_inst.m != lb_inst.base.n()) {
    throw std::invalid_argument("clustering_to_lb_solution requires the m = n reduction shape");
  }
  LayeredBallSolution sol;
  for (int x : cl.centers) {
    Vec d = cluster_distance_vector(lb_inst.base, cl, x);
    std::sort(d.data(), d.data() + d.size(), std::greater<double>());
    sol.open_max(x, d);
  }
  return sol;
}

SparseInstance sparsify(const LayeredBallInstance& inst, std::vector<std::string>* warnings) {
  const int n = inst.base.n();
  if (n < 2) throw std::invalid_argument("sparsify requires n >= 2");
  const int m = inst.m;
  const double nd = static_cast<double>(n);

  std::vector<SparseInstance::LayerClass> cls(m);
  Vec rho_c(m), mu_c(m);
  for (int i = 0; i < m; ++i) {
    const double rho = inst.rho[i];
    const double mu = inst.mu[i];
    if (mu < rho) {
      cls[i] = SparseInstance::LayerClass::Small;
      rho_c[i] = std::min(mu, rho);
      mu_c[i] = std::min(nd * rho, mu);
    } else if (mu > nd * rho) {
      cls[i] = SparseInstance::LayerClass::Large;
      rho_c[i] = rho;
      mu_c[i] = std::min(nd * rho, mu);
    } else {
      cls[i] = SparseInstance::LayerClass::Mid;
      rho_c[i] = rho;
      mu_c[i] = mu;
    }
  }

  std::vector<int> bucket_of(m, -1);
  const int max_buckets = ceil_log2(n);
  std::vector<std::vector<int>> raw_buckets(std::max(1, max_buckets));
  for (int i = 0; i < m; ++i) {
    if (rho_c[i] <= 0.0) {
      if (inst.mu[i] > 0.0 && inst.rho[i] <= 0.0 && warnings != nullptr) {
        warnings->push_back("layer " + std::to_string(i) +
                            " has rho = 0 with positive mu; dropped (never charges connections)");
      }
      continue;
    }
    const double ratio = mu_c[i] / rho_c[i];
    // Bucket j holds ratios in [2^{j-1}, 2^j); the last bucket is closed above
    // so ratio = n stays representable when n is a power of two.
    int j = 0;
    while (j + 1 < max_buckets && ratio >= static_cast<double>(1 << (j + 1))) ++j;
    raw_buckets[j].push_back(i);
  }

  std::vector<std::vector<int>> buckets;
  std::vector<double> rho_s, mu_s;
  for (const auto& bucket : raw_buckets) {
    if (bucket.empty()) continue;
    double r = 0.0, u = 0.0;
    for (int i : bucket) {
      r += rho_c[i];
      u += mu_c[i];
      bucket_of[i] = static_cast<int>(buckets.size());
    }
    buckets.push_back(bucket);
    rho_s.push_back(r);
    mu_s.push_back(u);
  }

  Vec rho_vec = Vec::Zero(static_cast<Eigen::Index>(rho_s.size()));
  Vec mu_vec = Vec::Zero(static_cast<Eigen::Index>(mu_s.size()));
  for (std::size_t j = 0; j < rho_s.size(); ++j) {
    rho_vec[static_cast<Eigen::Index>(j)] = rho_s[j];
    mu_vec[static_cast<Eigen::Index>(j)] = mu_s[j];
  }
  SparseInstance sp{LayeredBallInstance(inst.base, rho_vec, mu_vec),
                    m,
                    inst.rho,
                    inst.mu,
                    std::move(cls),
                    std::move(bucket_of),
                    std::move(buckets)};
  return sp;
}

LayeredBallSolution unsparsify_solution(const SparseInstance& sp, const LayeredBallSolution& sol) {
  if (sol.centers.empty()) throw std::invalid_argument("solution has no centers");
  const int n = sp.inst.base.n();

  // Farthest point served by each center, under the sparse connection costs.
  std::vector<double> farthest(sol.centers.size(), 0.0);
  for (int p = 0; p < n; ++p) {
    const int x = lb_nearest_center(sp.inst, sol, p);
    const auto it = std::lower_bound(sol.centers.begin(), sol.centers.end(), x);
    const auto idx = static_cast<std::size_t>(it - sol.centers.begin());
    farthest[idx] = std::max(farthest[idx], sp.inst.base.d_pf(p, x));
  }

  LayeredBallSolution out;
  for (std::size_t ci = 0; ci < sol.centers.size(); ++ci) {
    Vec r = Vec::Zero(sp.orig_m);
    for (int i = 0; i < sp.orig_m; ++i) {
      switch (sp.layer_class[i]) {
        case SparseInstance::LayerClass::Small:
          r[i] = farthest[ci];
          break;
        case SparseInstance::LayerClass::Large:
          r[i] = 0.0;
          break;
        case SparseInstance::LayerClass::Mid:
          r[i] = (sp.bucket_of[i] >= 0) ? sol.radii[ci][sp.bucket_of[i]] : 0.0;
          break;
      }
    }
    out.open_max(sol.centers[ci], r);
  }
  return out;
}

std::vector<std::pair<double, double>> guess_pairs(const SparseInstance& sp) {
  const MetricInstance& base = sp.inst.base;
  const int n = base.n();
  std::set<double> deltas;
  deltas.insert(0.0);
  for (int p = 0; p < n; ++p) {
    for (int f = 0; f < base.num_facilities(); ++f) deltas.insert(base.d_pf(p, f));
  }
  const double rho_sum = sp.inst.rho.sum();
  const int gammas = std::max(1, ceil_log2(n));
  std::vector<std::pair<double, double>> pairs;
  for (double delta : deltas) {
    if (delta <= 0.0) {
      pairs.emplace_back(0.0, 0.0);
      continue;
    }
    for (int j = 1; j <= gammas; ++j) {
      pairs.emplace_back(delta, delta * std::ldexp(1.0, j) * rho_sum);
    }
  }
  return pairs;
}

CandidateRadii enumerate_radii(int n, int m, const Vec& mu, double delta, double gamma,
                               std::int64_t cap) {
  if (n < 1) throw std::invalid_argument("enumerate_radii requires n >= 1");
  if (m < 0 || mu.size() != m) throw std::invalid_argument("enumerate_radii: bad mu length");
  if (delta < 0.0 || gamma < 0.0) throw std::invalid_argument("Delta and Gamma must be >= 0");

  CandidateRadii out;
  out.delta = delta;
  out.gamma = gamma;
  if (delta <= 0.0) {
    out.singles = {0.0};
  } else {
    const int count = static_cast<int>(std::ceil(3.0 * std::log2(std::max(2, n))));
    out.singles.reserve(count);
    for (int i = 1; i <= count; ++i) out.singles.push_back(std::ldexp(delta, -i));
  }

  if (m == 0) {
    out.vectors.push_back(Vec(0));
    return out;
  }

  // Multisets of size m over the singles; combinatorial count checked first.
  const int s = static_cast<int>(out.singles.size());
  double combos = 1.0;
  for (int i = 1; i <= m; ++i) combos *= static_cast<double>(s + m - i) / i;
  if (combos > static_cast<double>(cap)) {
    throw SizingError("candidate radius vectors exceed the cap", combos,
                      static_cast<double>(cap));
  }

  const double budget = gamma + kTol * std::max(1.0, gamma);
  std::vector<int> pick(m, 0);  // indices into singles, non-decreasing => radii non-increasing
  Vec r(m);
  while (true) {
    double cost = 0.0;
    for (int i = 0; i < m; ++i) {
      r[i] = out.singles[pick[i]];
      cost += mu[i] * r[i];
    }
    if (cost <= budget) out.vectors.push_back(r);
    int pos = m - 1;
    while (pos >= 0 && pick[pos] == s - 1) --pos;
    if (pos < 0) break;
    const int next = pick[pos] + 1;
    for (int i = pos; i < m; ++i) pick[i] = next;
  }
  return out;
}

}  // namespace ncc
