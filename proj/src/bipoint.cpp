#include "ncc/bipoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ncc {

namespace {

// Restriction of an LMP output to a single facility, chosen to minimize the
// resulting cost. Repairs the high-lambda endpoint of the binary search.
LayeredBallSolution keep_best_single(const LayeredBallInstance& inst,
                                     const LayeredBallSolution& sol) {
  LayeredBallSolution best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sol.centers.size(); ++i) {
    LayeredBallSolution cand;
    cand.open_max(sol.centers[i], sol.radii[i]);
    const double c = lb_cost(inst, cand);
    if (c < best_cost - kTol) {
      best = cand;
      best_cost = c;
    }
  }
  return best;
}

}  // namespace

BiPointResult binary_search_bipoint(const LayeredBallInstance& sparse,
                                    const CandidateRadii& radii, std::int64_t state_cap,
                                    const LmpOptions& lmp) {
  const MetricInstance& base = sparse.base;
  const int n = base.n();
  const int k = base.k();
  const double delta_max = base.max_pf_distance();

  if (delta_max <= kTol) {
    // Every point coincides with every facility; a single zero ball is free.
    LayeredBallSolution trivial;
    trivial.open_max(0, Vec::Zero(sparse.m));
    return BiPointResult{trivial, std::nullopt};
  }

  LayeredFacilityLocation fl(sparse, radii, state_cap);

  LmpOutput at_zero = lmp_solve(fl, 0.0, lmp);
  if (at_zero.solution.size() <= k) {
    // Already feasible with free openings: within (2 log2 n + 3) OPT.
    return BiPointResult{at_zero.solution, std::nullopt};
  }
  LayeredBallSolution sol2 = at_zero.solution;
  double lambda2 = 0.0;

  double lambda1 = static_cast<double>(n) * delta_max;
  LmpOutput at_top = lmp_solve(fl, lambda1, lmp);
  LayeredBallSolution sol1 = at_top.solution.size() <= k
                                 ? at_top.solution
                                 : keep_best_single(sparse, at_top.solution);

  const double factor = 2.0 * std::log2(static_cast<double>(std::max(2, n))) + 3.0;
  const double delta_min = base.min_positive_pf_distance();
  const double threshold = delta_min / (factor * base.num_facilities());

  int iterations = 0;
  while (lambda1 - lambda2 > threshold) {
    if (++iterations > 200) {
      throw std::logic_error("lambda binary search failed to converge in 200 iterations");
    }
    const double mid = 0.5 * (lambda1 + lambda2);
    LmpOutput out = lmp_solve(fl, mid, lmp);
    if (out.solution.size() <= k) {
      sol1 = out.solution;
      lambda1 = mid;
    } else {
      sol2 = out.solution;
      lambda2 = mid;
    }
  }

  BiPoint bi;
  bi.sol1 = std::move(sol1);
  bi.sol2 = std::move(sol2);
  const double n1 = bi.sol1.size();
  const double n2 = bi.sol2.size();
  bi.a = (n2 - k) / (n2 - n1);
  bi.b = (k - n1) / (n2 - n1);
  bi.cost1 = lb_cost(sparse, bi.sol1);
  bi.cost2 = lb_cost(sparse, bi.sol2);
  return BiPointResult{std::nullopt, bi};
}

double ball_pair_cost(const LayeredBallInstance& inst, double dist, const Vec& ra,
                      const Vec& rb) {
  double c = 0.0;
  for (int i = 0; i < inst.m; ++i) {
    c += inst.rho[i] * std::max(0.0, dist - ra[i] - rb[i]);
  }
  return c;
}

namespace {

// argmin of (cost, dist, index) with tolerance on the first two keys.
struct ArgMin {
  int index = -1;
  double cost = std::numeric_limits<double>::infinity();
  double dist = std::numeric_limits<double>::infinity();

  void offer(int i, double c, double d) {
    if (index < 0 || c < cost - kTol || (c < cost + kTol && d < dist - kTol)) {
      index = i;
      cost = c;
      dist = d;
    }
  }
};

}  // namespace

GroupStructure build_groups(const LayeredBallInstance& sparse, const BiPoint& bi) {
  const MetricInstance& base = sparse.base;
  const int n = base.n();
  const int n1 = bi.sol1.size();
  const int n2 = bi.sol2.size();
  const Vec zero = Vec::Zero(sparse.m);

  GroupStructure g;
  g.cl1_of_x2.resize(n2);
  g.cl1_of_p.resize(n);
  g.cl2_of_p.resize(n);
  g.groups.assign(n1, {});

  for (int j = 0; j < n2; ++j) {
    ArgMin best;
    for (int i = 0; i < n1; ++i) {
      const double d = base.d_ff(bi.sol1.centers[i], bi.sol2.centers[j]);
      best.offer(i, ball_pair_cost(sparse, d, bi.sol1.radii[i], bi.sol2.radii[j]), d);
    }
    g.cl1_of_x2[j] = best.index;
    g.groups[best.index].push_back(j);
  }
  for (int p = 0; p < n; ++p) {
    ArgMin best1;
    for (int i = 0; i < n1; ++i) {
      const double d = base.d_pf(p, bi.sol1.centers[i]);
      best1.offer(i, ball_pair_cost(sparse, d, bi.sol1.radii[i], zero), d);
    }
    g.cl1_of_p[p] = best1.index;
    ArgMin best2;
    for (int j = 0; j < n2; ++j) {
      const double d = base.d_pf(p, bi.sol2.centers[j]);
      best2.offer(j, ball_pair_cost(sparse, d, zero, bi.sol2.radii[j]), d);
    }
    g.cl2_of_p[p] = best2.index;
  }

  g.sum_radii.assign(n1, Vec::Zero(sparse.m));
  g.max_radii.assign(n1, Vec::Zero(sparse.m));
  g.inflated.resize(n1);
  for (int i = 0; i < n1; ++i) {
    for (int j : g.groups[i]) {
      g.sum_radii[i] += bi.sol2.radii[j];
      g.max_radii[i] = g.max_radii[i].cwiseMax(bi.sol2.radii[j]);
    }
    g.inflated[i] = bi.sol1.radii[i] + 2.0 * g.max_radii[i];
  }
  return g;
}

KnapsackLpSolution solve_knapsack_lp(const Vec& saving, const std::vector<double>& weight,
                                     double budget) {
  const int items = static_cast<int>(saving.size());
  if (static_cast<int>(weight.size()) != items) {
    throw std::invalid_argument("knapsack: |saving| != |weight|");
  }
  if (budget < 0.0) throw std::invalid_argument("knapsack: negative budget");

  KnapsackLpSolution out;
  out.u = Vec::Zero(items);
  double remaining = budget;
  std::vector<int> positive;
  for (int i = 0; i < items; ++i) {
    if (weight[i] <= 0.0) {
      out.u[i] = 1.0;
      out.value += saving[i];
      remaining -= weight[i];
    } else {
      positive.push_back(i);
    }
  }
  std::sort(positive.begin(), positive.end(), [&](int a, int b) {
    const double da = saving[a] / weight[a];
    const double db = saving[b] / weight[b];
    if (da != db) return da > db;
    return a < b;
  });
  for (int i : positive) {
    if (remaining <= 0.0) break;
    if (weight[i] <= remaining) {
      out.u[i] = 1.0;
      out.value += saving[i];
      remaining -= weight[i];
    } else {
      out.u[i] = remaining / weight[i];
      out.value += saving[i] * out.u[i];
      out.special = i;
      remaining = 0.0;
      break;
    }
  }
  return out;
}

LayeredBallSolution round_bipoint(const LayeredBallInstance& sparse, const BiPoint& bi,
                                  const RoundingOptions& opts) {
  const int k = sparse.base.k();
  if (bi.a > 0.5 || bi.cost1 <= bi.cost2 + kTol) return bi.sol1;

  const GroupStructure g = build_groups(sparse, bi);
  const int n1 = bi.sol1.size();
  const Vec zero = Vec::Zero(sparse.m);

  // Per-group saving of opening all members instead of the inflated center
  // (Fig. 5 objective), and per-member shares used for the greedy pick.
  Vec saving = Vec::Zero(n1);
  std::vector<double> weight(n1);
  std::vector<double> member_share(bi.sol2.size(), 0.0);
  for (int j = 0; j < bi.sol2.size(); ++j) {
    member_share[j] -= sparse.mu.dot(bi.sol2.radii[j]);
  }
  for (int p = 0; p < sparse.base.n(); ++p) {
    const int i1 = g.cl1_of_p[p];
    const int j2 = g.cl2_of_p[p];
    const double d1 = sparse.base.d_pf(p, bi.sol1.centers[i1]);
    const double d2 = sparse.base.d_pf(p, bi.sol2.centers[j2]);
    const double detour = ball_pair_cost(sparse, d1, bi.sol1.radii[i1], zero) +
                          ball_pair_cost(sparse, d2, zero, bi.sol2.radii[j2]);
    saving[g.cl1_of_x2[j2]] += detour;
    member_share[j2] += detour;
  }
  for (int i = 0; i < n1; ++i) {
    saving[i] += sparse.mu.dot(bi.sol1.radii[i]) + sparse.mu.dot(g.sum_radii[i]);
    weight[i] = static_cast<double>(g.groups[i].size()) - 1.0;
  }

  const KnapsackLpSolution lp = solve_knapsack_lp(saving, weight, k - n1);

  LayeredBallSolution out;
  for (int i = 0; i < n1; ++i) {
    if (i == lp.special) {
      out.open_max(bi.sol1.centers[i], g.inflated[i]);
      const int gsize = static_cast<int>(g.groups[i].size());
      const int extras = std::max(
          0, static_cast<int>(std::ceil(lp.u[i] * gsize - 1e-9)) - 2);
      std::vector<int> members = g.groups[i];
      if (opts.random_seed.has_value()) {
        std::mt19937_64 rng(*opts.random_seed);
        std::shuffle(members.begin(), members.end(), rng);
      } else {
        std::sort(members.begin(), members.end(), [&](int a, int b) {
          if (member_share[a] != member_share[b]) return member_share[a] > member_share[b];
          return bi.sol2.centers[a] < bi.sol2.centers[b];
        });
      }
      for (int e = 0; e < extras; ++e) {
        const int j = members[e];
        out.open_max(bi.sol2.centers[j], bi.sol2.radii[j]);
      }
    } else if (lp.u[i] > 0.5) {
      for (int j : g.groups[i]) out.open_max(bi.sol2.centers[j], bi.sol2.radii[j]);
    } else {
      out.open_max(bi.sol1.centers[i], g.inflated[i]);
    }
  }

  if (out.size() > k) {
    throw std::logic_error("bi-point rounding opened more than k facilities");
  }
  return out;
}

LayeredBallSolution solve_lbkm_for_guess(const LayeredBallInstance& sparse,
                                         const CandidateRadii& radii,
                                         const RoundingOptions& opts,
                                         std::int64_t state_cap, const LmpOptions& lmp) {
  BiPointResult res = binary_search_bipoint(sparse, radii, state_cap, lmp);
  if (res.direct.has_value()) return *res.direct;
  return round_bipoint(sparse, *res.bipoint, opts);
}

LayeredBallSolution solve_lbkm(const LayeredBallInstance& inst, const SolveLbkmOptions& opts) {
  const MetricInstance& base = inst.base;
  const int n = base.n();
  if (n < 1) throw std::invalid_argument("solve_lbkm needs at least one point");

  if (n == 1) {
    // One point: the best single facility, radius per layer 0 or the distance.
    int best_x = 0;
    double best_d = base.d_pf(0, 0);
    for (int x = 1; x < base.num_facilities(); ++x) {
      if (base.d_pf(0, x) < best_d - kTol) {
        best_d = base.d_pf(0, x);
        best_x = x;
      }
    }
    Vec r(inst.m);
    for (int i = 0; i < inst.m; ++i) r[i] = (inst.mu[i] <= inst.rho[i]) ? best_d : 0.0;
    LayeredBallSolution sol;
    sol.open_max(best_x, r);
    return sol;
  }

  SparseInstance sp = sparsify(inst, opts.warnings);
  if (sp.inst.m == 0) {
    // No layer carries both connection and radius charges; any center works.
    LayeredBallSolution sol;
    sol.open_max(0, Vec::Zero(0));
    return unsparsify_solution(sp, sol);
  }

  std::optional<LayeredBallSolution> best;
  double best_cost = std::numeric_limits<double>::infinity();
  int skipped = 0;
  for (const auto& [delta, gamma] : guess_pairs(sp)) {
    CandidateRadii radii;
    try {
      radii = enumerate_radii(n, sp.inst.m, sp.inst.mu, delta, gamma, opts.radius_cap);
    } catch (const SizingError& e) {
      ++skipped;
      if (opts.warnings != nullptr) {
        opts.warnings->push_back("guess (" + std::to_string(delta) + ", " +
                                 std::to_string(gamma) + ") skipped: " + e.what());
      }
      continue;
    }
    if (radii.vectors.empty()) continue;
    LayeredBallSolution sparse_sol =
        solve_lbkm_for_guess(sp.inst, radii, opts.rounding, opts.state_cap, opts.lmp);
    LayeredBallSolution orig = unsparsify_solution(sp, sparse_sol);
    const double cost = lb_cost(inst, orig);
    if (cost < best_cost - kTol) {
      best_cost = cost;
      best = std::move(orig);
    }
  }
  if (!best.has_value()) {
    throw SizingError("every guess pair exceeded the candidate-radius cap", skipped,
                      static_cast<double>(opts.radius_cap));
  }
  return *best;
}

}  // namespace ncc
