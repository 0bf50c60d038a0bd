#include "ncc/meta.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace ncc {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

Vec prefix_ones(int j, int d) {
  Vec v = Vec::Zero(d);
  v.head(j).setOnes();
  return v;
}

// k^{1-chi_g} computed as k * g(e1)/g(ones); exact and defined at k = 1.
double k_power_term(const NormSpec& g) {
  const int k = g.arity();
  const double ones = g(prefix_ones(k, k));
  const double e1 = g(prefix_ones(1, k));
  if (ones <= 0.0 || e1 <= 0.0) {
    throw std::invalid_argument("outer norm must be positive on unit vectors");
  }
  return k * e1 / ones;
}

// n^{chi_f} = f(ones)/f(e1).
double n_power_term(const NormSpec& f) {
  const int n = f.arity();
  const double ones = f(prefix_ones(n, n));
  const double e1 = f(prefix_ones(1, n));
  if (ones <= 0.0 || e1 <= 0.0) {
    throw std::invalid_argument("inner norm must be positive on unit vectors");
  }
  return ones / e1;
}

double chi_or_one(const NormSpec& h) { return h.arity() >= 2 ? attenuation(h) : 1.0; }

double ord_l1_factor(int n) { return 216.0 * std::log2(static_cast<double>(std::max(1, n))) + 360.0; }

std::vector<int> greedy_supplier_centers(const MetricInstance& inst, int count) {
  const int n = inst.n();
  const int num_f = inst.num_facilities();
  std::vector<bool> chosen(num_f, false);
  std::vector<int> centers;

  // Best single center first, then repeatedly cover the farthest point with
  // its nearest unchosen facility.
  int first = 0;
  double first_cost = std::numeric_limits<double>::infinity();
  for (int x = 0; x < num_f; ++x) {
    double mx = 0.0;
    for (int p = 0; p < n; ++p) mx = std::max(mx, inst.d_pf(p, x));
    if (mx < first_cost - kTol) {
      first_cost = mx;
      first = x;
    }
  }
  chosen[first] = true;
  centers.push_back(first);

  std::vector<double> to_centers(n);
  for (int p = 0; p < n; ++p) to_centers[p] = inst.d_pf(p, first);
  while (static_cast<int>(centers.size()) < count) {
    int far = 0;
    for (int p = 1; p < n; ++p) {
      if (to_centers[p] > to_centers[far] + kTol) far = p;
    }
    int pick = -1;
    for (int x = 0; x < num_f; ++x) {
      if (chosen[x]) continue;
      if (pick < 0 || inst.d_pf(far, x) < inst.d_pf(far, pick) - kTol) pick = x;
    }
    if (pick < 0) break;
    chosen[pick] = true;
    centers.push_back(pick);
    for (int p = 0; p < n; ++p) to_centers[p] = std::min(to_centers[p], inst.d_pf(p, pick));
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

double mnkc_value(const MetricInstance& inst, const NormSpec& f, const std::vector<int>& X) {
  Vec d(inst.n());
  for (int p = 0; p < inst.n(); ++p) {
    double mn = inst.d_pf(p, X[0]);
    for (int x : X) mn = std::min(mn, inst.d_pf(p, x));
    d[p] = mn;
  }
  return f(d);
}

SubroutineResult default_mnkc(const MetricInstance& inst, const NormSpec& f) {
  const int size = std::min(inst.k(), inst.num_facilities());
  const double work = binom(inst.num_facilities(), size) * inst.n();
  if (work <= 5e6) {
    auto [cost, X] = exact_mnkc(inst, f);
    return SubroutineResult{X, 1.0, "exhaustive minimum-norm k-clustering"};
  }

  std::vector<int> X = greedy_supplier_centers(inst, size);
  double cur = mnkc_value(inst, f, X);
  for (int round = 0; round < 500; ++round) {
    double best_gain = 0.0;
    int best_out = -1, best_in = -1;
    for (std::size_t oi = 0; oi < X.size(); ++oi) {
      for (int in = 0; in < inst.num_facilities(); ++in) {
        if (std::find(X.begin(), X.end(), in) != X.end()) continue;
        std::vector<int> cand = X;
        cand[oi] = in;
        const double val = mnkc_value(inst, f, cand);
        if (cur - val > best_gain + kTol) {
          best_gain = cur - val;
          best_out = static_cast<int>(oi);
          best_in = in;
        }
      }
    }
    if (best_out < 0) break;
    X[best_out] = best_in;
    cur -= best_gain;
  }
  std::sort(X.begin(), X.end());
  return SubroutineResult{X, std::nullopt, "single-swap local search heuristic"};
}

SubroutineResult default_linf_sym(const MetricInstance& inst, const NormSpec& g) {
  const int size = std::min(inst.k(), inst.num_facilities());
  std::vector<int> X = greedy_supplier_centers(inst, size);
  if (g.kind() == NormKind::Linf) {
    return SubroutineResult{X, 3.0, "greedy farthest-point supplier (factor 3 for k-center)"};
  }
  return SubroutineResult{X, std::nullopt,
                          "greedy farthest-point heuristic stand-in, no proven factor"};
}

}  // namespace

SubroutineRegistry SubroutineRegistry::with_defaults() {
  SubroutineRegistry reg;
  reg.mnkc_solver = default_mnkc;
  reg.linf_sym_solver = default_linf_sym;
  return reg;
}

SolverReport solve_ord_l1(const MetricInstance& inst, const Vec& w,
                          const SolveLbkmOptions& opts) {
  const NormSpec f = NormSpec::ordered(w);
  if (f.arity() != inst.n()) throw std::invalid_argument("weight vector must have length n");
  const NormSpec g = NormSpec::l1(inst.k());

  const LayeredBallInstance lb = reduce_ord_l1(inst, w);
  const LayeredBallSolution sol = solve_lbkm(lb, opts);
  SolverReport rep;
  rep.solution = lb_solution_to_clustering(lb, sol);
  rep.cost = solution_cost(inst, rep.solution, f, g);
  rep.algorithm = "ord-l1";
  rep.proven_factor = ord_l1_factor(inst.n());
  rep.chi_f = chi_or_one(f);
  rep.chi_g = chi_or_one(g);
  rep.notes = "layered-ball primal-dual pipeline";
  return rep;
}

SolverReport solve_sym_l1(const MetricInstance& inst, const NormSpec& f,
                          const SolveLbkmOptions& opts) {
  if (f.arity() != inst.n()) throw std::invalid_argument("inner norm arity must equal n");
  const OrderedSurrogate sur = ordered_surrogate(f);
  SolverReport rep = solve_ord_l1(inst, sur.weights, opts);
  rep.algorithm = "sym-l1";
  rep.cost = solution_cost(inst, rep.solution, f, NormSpec::l1(inst.k()));
  rep.proven_factor *= sur.distortion_bound;
  rep.chi_f = chi_or_one(f);
  if (sur.exact) {
    rep.notes = "ordered surrogate exact for " + f.describe();
  } else {
    rep.notes = "ordered surrogate with sampled distortion " +
                std::to_string(sur.distortion_bound) + " for " + f.describe();
  }
  return rep;
}

SolverReport solve_chig(const MetricInstance& inst, const NormSpec& f, const NormSpec& g,
                        const SolveLbkmOptions& opts) {
  if (g.arity() != inst.k()) throw std::invalid_argument("outer norm arity must equal k");
  SolverReport rep = solve_sym_l1(inst, f, opts);
  rep.algorithm = "chig";
  rep.cost = solution_cost(inst, rep.solution, f, g);
  rep.proven_factor *= k_power_term(g);
  rep.chi_g = chi_or_one(g);
  rep.notes += "; outer norm ignored during optimization";
  return rep;
}

SolverReport solve_chif(const MetricInstance& inst, const NormSpec& f, const NormSpec& g,
                        const SubroutineRegistry& registry) {
  if (!registry.linf_sym_solver) {
    throw ConfigError("solve_chif requires a registered inner-Linf solver");
  }
  if (f.arity() != inst.n() || g.arity() != inst.k()) {
    throw std::invalid_argument("norm arities must match (n, k)");
  }
  const SubroutineResult sub = registry.linf_sym_solver(inst, g);
  if (sub.centers.empty() || static_cast<int>(sub.centers.size()) > inst.k()) {
    throw ConfigError("inner-Linf solver returned an invalid center set");
  }
  SolverReport rep;
  rep.solution = nearest_assignment(inst, sub.centers);
  rep.cost = solution_cost(inst, rep.solution, f, g);
  rep.algorithm = "chif";
  rep.heuristic = !sub.proven_factor.has_value();
  const double sub_factor = sub.proven_factor.value_or(
      std::max(1.0, std::log2(static_cast<double>(std::max(1, inst.k())))));
  rep.proven_factor = sub_factor * n_power_term(f);
  rep.chi_f = chi_or_one(f);
  rep.chi_g = chi_or_one(g);
  rep.notes = "inner-Linf subroutine: " + sub.note;
  return rep;
}

SolverReport solve_k_apx(const MetricInstance& inst, const NormSpec& f, const NormSpec& g,
                         const SubroutineRegistry& registry) {
  if (!registry.mnkc_solver) {
    throw ConfigError("solve_k_apx requires a registered norm-k-clustering solver");
  }
  if (f.arity() != inst.n() || g.arity() != inst.k()) {
    throw std::invalid_argument("norm arities must match (n, k)");
  }
  const SubroutineResult sub = registry.mnkc_solver(inst, f);
  if (sub.centers.empty() || static_cast<int>(sub.centers.size()) > inst.k()) {
    throw ConfigError("norm-k-clustering solver returned an invalid center set");
  }
  SolverReport rep;
  rep.solution = nearest_assignment(inst, sub.centers);
  rep.cost = solution_cost(inst, rep.solution, f, g);
  rep.algorithm = "k-apx";
  rep.heuristic = !sub.proven_factor.has_value();
  rep.proven_factor = inst.k() * sub.proven_factor.value_or(1.0);
  rep.chi_f = chi_or_one(f);
  rep.chi_g = chi_or_one(g);
  rep.notes = "cluster-oblivious subroutine: " + sub.note;
  return rep;
}

SolverReport solve_auto(const MetricInstance& inst, const NormSpec& f, const NormSpec& g,
                        const SubroutineRegistry& registry, const SolveLbkmOptions& opts) {
  auto run_chig = std::async(std::launch::async,
                             [&] { return solve_chig(inst, f, g, opts); });
  auto run_chif = std::async(std::launch::async,
                             [&] { return solve_chif(inst, f, g, registry); });
  auto run_kapx = std::async(std::launch::async,
                             [&] { return solve_k_apx(inst, f, g, registry); });

  std::vector<SolverReport> candidates;
  std::string failures;
  auto collect = [&](std::future<SolverReport>& fut) {
    try {
      candidates.push_back(fut.get());
    } catch (const std::exception& e) {
      failures += std::string(failures.empty() ? "" : "; ") + e.what();
    }
  };
  collect(run_chig);
  collect(run_chif);
  collect(run_kapx);
  if (candidates.empty()) {
    throw std::runtime_error("all candidate solvers failed: " + failures);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].cost < candidates[best].cost - kTol) best = i;
  }
  SolverReport rep = candidates[best];
  double proven = std::numeric_limits<double>::infinity();
  bool any_proven = false;
  std::string notes = "auto picked " + rep.algorithm;
  for (const SolverReport& c : candidates) {
    notes += "; " + c.algorithm + " cost " + std::to_string(c.cost) +
             (c.heuristic ? " (heuristic)" : "");
    if (!c.heuristic) {
      proven = std::min(proven, c.proven_factor);
      any_proven = true;
    }
  }
  rep.algorithm = "auto";
  rep.heuristic = !any_proven;
  if (any_proven) rep.proven_factor = proven;
  rep.notes = notes;
  return rep;
}

}  // namespace ncc
