#ifndef NCC_PRIMAL_DUAL_HPP
#define NCC_PRIMAL_DUAL_HPP

#include <iosfwd>
#include <limits>

#include "ncc/layered_ball.hpp"

namespace ncc {

struct LmpOptions {
  // Optional CSV event trace (time,kind,facility,radius_index,point).
  std::ostream* trace = nullptr;
};

// Layered Ball Facility Location prepared for repeated opening-cost probes:
// the candidate balls (facility x canonic radius vector), their connection
// cost table and per-point event schedules are shared across lambda values.
class LayeredFacilityLocation {
 public:
  // Throws SizingError when n * |F| * |radii| exceeds state_cap.
  LayeredFacilityLocation(const LayeredBallInstance& inst, const CandidateRadii& radii,
                          std::int64_t state_cap = 50'000'000);

  const LayeredBallInstance& instance() const { return *inst_; }
  const CandidateRadii& candidate_radii() const { return *radii_; }

  int num_balls() const { return static_cast<int>(ball_mu_cost_.size()); }
  int ball_facility(int b) const { return b / radii_per_facility_; }
  const Vec& ball_radius(int b) const { return radii_->vectors[b % radii_per_facility_]; }
  double ball_mu_cost(int b) const { return ball_mu_cost_[b]; }
  // rho^T ((d(p,x_b) - r_b)^+): the Fig. 3 connection coefficient.
  double connection_cost(int b, int p) const { return conn_[b][p]; }

  const std::vector<std::pair<double, int>>& point_schedule(int p) const {
    return schedule_[p];
  }

 private:
  const LayeredBallInstance* inst_;
  const CandidateRadii* radii_;
  int radii_per_facility_;
  std::vector<double> ball_mu_cost_;
  std::vector<std::vector<double>> conn_;                    // [ball][point]
  std::vector<std::vector<std::pair<double, int>>> schedule_;  // per point, (cost, ball) ascending
};

// Final state of the dual-ascent phase. beta values are recovered from the
// freeze/open times: beta(b,p) = (min(alpha_p, open_time_b) - tight_time)^+.
struct DualState {
  Vec alpha;                      // freeze time of each point
  std::vector<double> open_time;  // per ball; +inf when never paid for
  std::vector<int> paid_order;    // Y: balls in order of payment completion
  std::vector<std::vector<std::pair<int, double>>> tight;  // per ball: (point, tight time)
  double finish_time = 0.0;

  static constexpr double kNever = std::numeric_limits<double>::infinity();
};

double beta_value(const DualState& duals, int ball, int point);

// Event-driven simulation of the continuous ascent: active duals rise at
// unit rate, a beta follows its alpha once the connection constraint is
// tight, a ball enters Y when its opening cost lambda + mu^T r is paid, and
// every point tight with it freezes. Frozen points stop all their betas.
DualState dual_ascent(const LayeredFacilityLocation& fl, double lambda,
                      const LmpOptions& opts = {});

// A ball selected by the greedy pruning, with its contributing clients
// (positive beta).
struct PrunedBall {
  int ball;
  int facility;
  Vec radius;
  std::vector<int> contributors;
};

// Greedy conflict resolution: repeatedly commits the most expensive paid
// ball (by mu^T r) and discards every paid ball sharing a contributor.
// Committed balls have pairwise disjoint contributor sets.
std::vector<PrunedBall> prune(const LayeredFacilityLocation& fl, const DualState& duals);

// expand(r)_i = r_i + 2 mu^T r / mu_i, so mu^T expand(r) = (2m+1) mu^T r.
// Layers with mu_i = 0 keep their radius (cannot occur on sparse instances).
Vec expand(const Vec& r, const Vec& mu);

struct LmpOutput {
  LayeredBallSolution solution;    // (X, q): per-facility max of expanded radii
  std::vector<PrunedBall> pruned;  // Z, with unexpanded radii
  std::vector<int> contributing;   // P_Z, ascending
  DualState duals;
};

// Full Lagrange-multiplier-preserving solve: ascent, pruning, expansion.
// Satisfies cost(X,q) <= (2 log2 n + 3)(OPT^{Delta,Gamma} + lambda (k-|X|))
// and max_i mu_i q(x)_i <= 3 Gamma.
LmpOutput lmp_solve(const LayeredFacilityLocation& fl, double lambda,
                    const LmpOptions& opts = {});

}  // namespace ncc

#endif  // NCC_PRIMAL_DUAL_HPP
