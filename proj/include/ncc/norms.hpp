#ifndef NCC_NORMS_HPP
#define NCC_NORMS_HPP

#include <functional>
#include <utility>

#include "ncc/common.hpp"

namespace ncc {

enum class NormKind { L1, Linf, Lp, Top, Ordered, Oracle };

// A monotone symmetric norm on R^d_{>=0}, described parametrically or by a
// black-box evaluation contract. Immutable after construction.
class NormSpec {
 public:
  static NormSpec l1(int d);
  static NormSpec linf(int d);
  static NormSpec lp(double p, int d);           // p >= 1
  static NormSpec top(int ell, int d);           // 1 <= ell <= d
  static NormSpec ordered(Vec weights);          // non-increasing, >= 0
  // Black-box norm. Axioms are spot-checked by tests, never enforced here.
  // The callable must be re-entrant.
  static NormSpec oracle(std::function<double(const Vec&)> fn, int d);

  NormKind kind() const { return kind_; }
  int arity() const { return arity_; }
  double p() const { return p_; }
  int ell() const { return ell_; }
  const Vec& weights() const { return weights_; }

  // Norm value of a nonnegative vector of length arity().
  double operator()(const Vec& x) const;

  std::string describe() const;

 private:
  NormSpec() = default;

  NormKind kind_ = NormKind::L1;
  int arity_ = 0;
  double p_ = 1.0;
  int ell_ = 1;
  Vec weights_;
  std::function<double(const Vec&)> oracle_;
};

double eval(const NormSpec& norm, const Vec& x);

// top_ell of x with sum replaced by the threshold proxy:
//   ell*y + sum_i (x_i - y)^+.
// Upper bounds top_ell(x) for every y >= 0; tight at y = x_sorted[ell].
double proxy_top(double y, const Vec& x, int ell);

// Ordered-norm proxy: sum_i (w_i - w_{i+1}) * proxy_top(t_i, x, i), with
// w_{d+1} = 0. Upper bounds ord_w(x); tight when t is x sorted decreasingly.
double proxy_ordered(const Vec& x, const Vec& w, const Vec& t);

// Attenuation chi = (log2 h(1,..,1) - log2 h(1,0,..,0)) / log2 d, in [0,1].
// 0 for Linf, 1 for L1, 1/z for Lz, log(ell)/log(d) for top_ell.
double attenuation(const NormSpec& norm);

// Bracket h(v) between (||v||_1 / d) * h(ones) and ||v||_inf * h(ones).
std::pair<double, double> sandwich_bounds(const NormSpec& norm, const Vec& v);

// Ordered-norm stand-in for an arbitrary monotone symmetric norm, exact on
// every prefix-ones vector.
struct OrderedSurrogate {
  Vec weights;              // w_i = h(ones_i) - h(ones_{i-1}), non-increasing
  double distortion_bound;  // 1 for exactly-representable kinds, else sampled
  bool exact;               // surrogate reproduces the source norm identically
};

// Builds the prefix-gap surrogate. Rejects sources whose prefix-ones values
// are not concave (such a source is not a valid monotone symmetric norm).
// For non-ordered kinds the distortion bound is measured on a fixed seeded
// sample of vectors; ord_w(x) >= h(x) holds unconditionally.
OrderedSurrogate ordered_surrogate(const NormSpec& norm);

}  // namespace ncc

#endif  // NCC_NORMS_HPP
