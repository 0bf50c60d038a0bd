#include "ncc/primal_dual.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace ncc {

LayeredFacilityLocation::LayeredFacilityLocation(const LayeredBallInstance& inst,
                                                 const CandidateRadii& radii,
                                                 std::int64_t state_cap)
    : inst_(&inst), radii_(&radii) {
  if (radii.vectors.empty()) {
    throw std::invalid_argument("facility location needs a nonempty candidate radius set");
  }
  const int n = inst.base.n();
  const int num_f = inst.base.num_facilities();
  radii_per_facility_ = static_cast<int>(radii.vectors.size());
  const double states = static_cast<double>(n) * num_f * radii_per_facility_;
  if (states > static_cast<double>(state_cap)) {
    throw SizingError("facility-location connection table", states,
                      static_cast<double>(state_cap));
  }

  const int balls = num_f * radii_per_facility_;
  ball_mu_cost_.resize(balls);
  conn_.assign(balls, std::vector<double>(n));
  for (int b = 0; b < balls; ++b) {
    const int f = b / radii_per_facility_;
    const Vec& r = radii.vectors[b % radii_per_facility_];
    ball_mu_cost_[b] = inst.mu.dot(r);
    for (int p = 0; p < n; ++p) {
      const double d = inst.base.d_pf(p, f);
      double c = 0.0;
      for (int i = 0; i < inst.m; ++i) c += inst.rho[i] * std::max(0.0, d - r[i]);
      conn_[b][p] = c;
    }
  }

  schedule_.assign(n, {});
  for (int p = 0; p < n; ++p) {
    auto& sched = schedule_[p];
    sched.reserve(balls);
    for (int b = 0; b < balls; ++b) sched.emplace_back(conn_[b][p], b);
    std::stable_sort(sched.begin(), sched.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
  }
}

double beta_value(const DualState& duals, int ball, int point) {
  for (const auto& [p, tight_time] : duals.tight[ball]) {
    if (p == point) {
      return std::max(0.0, std::min(duals.alpha[point], duals.open_time[ball]) - tight_time);
    }
  }
  return 0.0;
}

DualState dual_ascent(const LayeredFacilityLocation& fl, double lambda,
                      const LmpOptions& opts) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  const int n = fl.instance().base.n();
  const int balls = fl.num_balls();

  DualState st;
  st.alpha = Vec::Zero(n);
  st.open_time.assign(balls, DualState::kNever);
  st.tight.assign(balls, {});

  std::vector<bool> active(n, true);
  int num_active = n;
  std::vector<double> paid(balls, 0.0);
  std::vector<int> payers(balls, 0);          // tight and still-active points
  std::vector<char> started(balls, 0);        // has at least one tight point
  std::vector<int> started_list;
  std::vector<std::vector<int>> tight_balls_of(n);
  std::vector<std::size_t> cursor(n, 0);

  auto requirement = [&](int b) { return lambda + fl.ball_mu_cost(b); };
  auto pay_tol = [&](int b) { return kTol * std::max(1.0, requirement(b)); };

  auto trace = [&](double time, const char* kind, int ball, int point) {
    if (opts.trace == nullptr) return;
    *opts.trace << time << ',' << kind << ',';
    if (ball >= 0) {
      *opts.trace << fl.ball_facility(ball) << ',' << ball % fl.candidate_radii().vectors.size();
    } else {
      *opts.trace << ",";
    }
    *opts.trace << ',' << (point >= 0 ? std::to_string(point) : std::string()) << '\n';
  };

  double t = 0.0;

  auto freeze = [&](int p, double time) {
    if (!active[p]) return;
    active[p] = false;
    --num_active;
    st.alpha[p] = time;
    for (int b : tight_balls_of[p]) {
      if (st.open_time[b] == DualState::kNever) --payers[b];
    }
    trace(time, "freeze", -1, p);
  };

  auto open_ball = [&](int b, double time) {
    st.open_time[b] = time;
    st.paid_order.push_back(b);
    trace(time, "open", b, -1);
    // Every point currently tight with the ball stops growing.
    for (const auto& [p, tight_time] : st.tight[b]) freeze(p, time);
  };

  // Balls whose opening cost is already zero are paid from the start.
  for (int b = 0; b < balls; ++b) {
    if (requirement(b) <= pay_tol(b)) open_ball(b, 0.0);
  }

  const long max_rounds = 16L * (static_cast<long>(n) * balls + n + balls + 4);
  long rounds = 0;
  while (num_active > 0) {
    if (++rounds > max_rounds) {
      throw std::logic_error("dual ascent failed to terminate (event bookkeeping bug)");
    }

    double next_tight = DualState::kNever;
    for (int p = 0; p < n; ++p) {
      if (!active[p]) continue;
      const auto& sched = fl.point_schedule(p);
      if (cursor[p] < sched.size()) {
        next_tight = std::min(next_tight, sched[cursor[p]].first);
      }
    }
    double next_pay = DualState::kNever;
    for (int b : started_list) {
      if (st.open_time[b] != DualState::kNever) continue;
      const double need = requirement(b) - paid[b];
      if (need <= pay_tol(b)) {
        next_pay = t;
        break;
      }
      if (payers[b] > 0) next_pay = std::min(next_pay, t + need / payers[b]);
    }

    const double next = std::min(next_tight, next_pay);
    if (next == DualState::kNever) {
      throw std::logic_error("dual ascent stalled with active points (event bookkeeping bug)");
    }

    for (int b : started_list) {
      if (st.open_time[b] == DualState::kNever && payers[b] > 0) {
        paid[b] += payers[b] * (next - t);
      }
    }
    t = next;

    // Simultaneous events: payment completions first (ball order), then
    // tightness events in (ball, point) order.
    for (int b : started_list) {
      if (st.open_time[b] != DualState::kNever) continue;
      if (requirement(b) - paid[b] <= pay_tol(b)) open_ball(b, t);
    }

    std::vector<std::pair<int, int>> due;  // (ball, point)
    for (int p = 0; p < n; ++p) {
      if (!active[p]) continue;
      const auto& sched = fl.point_schedule(p);
      while (cursor[p] < sched.size() && sched[cursor[p]].first <= t + kTol) {
        due.emplace_back(sched[cursor[p]].second, p);
        ++cursor[p];
      }
    }
    std::sort(due.begin(), due.end());
    for (const auto& [b, p] : due) {
      if (!active[p]) continue;
      const double tight_time = fl.connection_cost(b, p);
      trace(t, "tight", b, p);
      if (st.open_time[b] != DualState::kNever) {
        // Tight with an already-open ball: the point can connect and stops.
        freeze(p, tight_time);
      } else {
        st.tight[b].emplace_back(p, tight_time);
        tight_balls_of[p].push_back(b);
        ++payers[b];
        if (!started[b]) {
          started[b] = 1;
          started_list.push_back(b);
        }
      }
    }
  }

  st.finish_time = t;
  return st;
}

std::vector<PrunedBall> prune(const LayeredFacilityLocation& fl, const DualState& duals) {
  struct Candidate {
    int ball;
    double mu_cost;
    std::vector<int> contributors;
    bool alive = true;
  };
  std::vector<Candidate> cands;
  cands.reserve(duals.paid_order.size());
  for (int b : duals.paid_order) {
    Candidate c;
    c.ball = b;
    c.mu_cost = fl.ball_mu_cost(b);
    for (const auto& [p, tight_time] : duals.tight[b]) {
      if (beta_value(duals, b, p) > kTol) c.contributors.push_back(p);
    }
    std::sort(c.contributors.begin(), c.contributors.end());
    cands.push_back(std::move(c));
  }

  std::vector<PrunedBall> Z;
  for (;;) {
    int best = -1;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (!cands[i].alive) continue;
      if (best < 0 || cands[i].mu_cost > cands[best].mu_cost + kTol ||
          (cands[i].mu_cost > cands[best].mu_cost - kTol && cands[i].ball < cands[best].ball)) {
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    Candidate& pick = cands[best];
    pick.alive = false;
    for (auto& other : cands) {
      if (!other.alive) continue;
      const bool conflict = std::ranges::any_of(pick.contributors, [&](int p) {
        return std::binary_search(other.contributors.begin(), other.contributors.end(), p);
      });
      if (conflict) other.alive = false;
    }
    Z.push_back(PrunedBall{pick.ball, fl.ball_facility(pick.ball),
                           fl.ball_radius(pick.ball), std::move(pick.contributors)});
  }
  return Z;
}

Vec expand(const Vec& r, const Vec& mu) {
  if (r.size() != mu.size()) throw std::invalid_argument("expand: length mismatch");
  const double cost = mu.dot(r);
  Vec out = r;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (mu[i] > 0.0) out[i] = r[i] + 2.0 * cost / mu[i];
  }
  return out;
}

LmpOutput lmp_solve(const LayeredFacilityLocation& fl, double lambda, const LmpOptions& opts) {
  LmpOutput out;
  out.duals = dual_ascent(fl, lambda, opts);
  out.pruned = prune(fl, out.duals);
  const Vec& mu = fl.instance().mu;
  for (const PrunedBall& z : out.pruned) {
    out.solution.open_max(z.facility, expand(z.radius, mu));
    out.contributing.insert(out.contributing.end(), z.contributors.begin(),
                            z.contributors.end());
  }
  std::sort(out.contributing.begin(), out.contributing.end());
  return out;
}

}  // namespace ncc
