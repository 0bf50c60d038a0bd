#include "ncc/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace ncc {

namespace {

void check_nonnegative(const Vec& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) {
      throw std::invalid_argument("norm argument has a negative coordinate at index " +
                                  std::to_string(i));
    }
  }
}

Vec sorted_desc(const Vec& x) {
  Vec s = x;
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return s;
}

bool non_increasing(const Vec& w) {
  for (Eigen::Index i = 0; i + 1 < w.size(); ++i) {
    if (w[i] + kTol < w[i + 1]) return false;
  }
  return true;
}

// Prefix-ones vector (1,...,1,0,...,0) with j ones.
Vec prefix_ones(int j, int d) {
  Vec v = Vec::Zero(d);
  v.head(j).setOnes();
  return v;
}

}  // namespace

NormSpec NormSpec::l1(int d) {
  if (d < 1) throw std::invalid_argument("norm arity must be positive");
  NormSpec n;
  n.kind_ = NormKind::L1;
  n.arity_ = d;
  return n;
}

NormSpec NormSpec::linf(int d) {
  if (d < 1) throw std::invalid_argument("norm arity must be positive");
  NormSpec n;
  n.kind_ = NormKind::Linf;
  n.arity_ = d;
  return n;
}

NormSpec NormSpec::lp(double p, int d) {
  if (d < 1) throw std::invalid_argument("norm arity must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("lp norm requires p >= 1");
  NormSpec n;
  n.kind_ = NormKind::Lp;
  n.arity_ = d;
  n.p_ = p;
  return n;
}

NormSpec NormSpec::top(int ell, int d) {
  if (d < 1) throw std::invalid_argument("norm arity must be positive");
  if (ell < 1 || ell > d) throw std::invalid_argument("top norm requires 1 <= ell <= arity");
  NormSpec n;
  n.kind_ = NormKind::Top;
  n.arity_ = d;
  n.ell_ = ell;
  return n;
}

NormSpec NormSpec::ordered(Vec weights) {
  if (weights.size() < 1) throw std::invalid_argument("ordered norm needs at least one weight");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw std::invalid_argument("ordered weights must be nonnegative");
  }
  if (!non_increasing(weights)) {
    throw std::invalid_argument("ordered weights must be non-increasing");
  }
  NormSpec n;
  n.kind_ = NormKind::Ordered;
  n.arity_ = static_cast<int>(weights.size());
  n.weights_ = std::move(weights);
  return n;
}

NormSpec NormSpec::oracle(std::function<double(const Vec&)> fn, int d) {
  if (d < 1) throw std::invalid_argument("norm arity must be positive");
  if (!fn) throw std::invalid_argument("oracle norm needs an evaluation contract");
  NormSpec n;
  n.kind_ = NormKind::Oracle;
  n.arity_ = d;
  n.oracle_ = std::move(fn);
  return n;
}

double NormSpec::operator()(const Vec& x) const {
  if (x.size() != arity_) {
    throw std::invalid_argument("norm arity mismatch: expected " + std::to_string(arity_) +
                                ", got " + std::to_string(x.size()));
  }
  check_nonnegative(x);
  switch (kind_) {
    case NormKind::L1:
      return x.sum();
    case NormKind::Linf:
      return x.size() == 0 ? 0.0 : x.maxCoeff();
    case NormKind::Lp: {
      if (x.maxCoeff() == 0.0) return 0.0;
      // Scale out the max to avoid overflow for large p.
      const double mx = x.maxCoeff();
      double acc = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) acc += std::pow(x[i] / mx, p_);
      return mx * std::pow(acc, 1.0 / p_);
    }
    case NormKind::Top: {
      Vec s = sorted_desc(x);
      return s.head(ell_).sum();
    }
    case NormKind::Ordered: {
      Vec s = sorted_desc(x);
      return weights_.dot(s);
    }
    case NormKind::Oracle:
      return oracle_(x);
  }
  throw std::logic_error("unreachable norm kind");
}

std::string NormSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case NormKind::L1:
      os << "l1";
      break;
    case NormKind::Linf:
      os << "linf";
      break;
    case NormKind::Lp:
      os << "lp(" << p_ << ")";
      break;
    case NormKind::Top:
      os << "top(" << ell_ << ")";
      break;
    case NormKind::Ordered:
      os << "ordered[d=" << arity_ << "]";
      break;
    case NormKind::Oracle:
      os << "oracle[d=" << arity_ << "]";
      break;
  }
  return os.str();
}

double eval(const NormSpec& norm, const Vec& x) { return norm(x); }

double proxy_top(double y, const Vec& x, int ell) {
  if (y < 0.0) throw std::invalid_argument("proxy threshold must be nonnegative");
  if (ell < 1 || ell > x.size()) throw std::invalid_argument("proxy_top requires 1 <= ell <= d");
  check_nonnegative(x);
  double tail = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) tail += std::max(0.0, x[i] - y);
  return ell * y + tail;
}

double proxy_ordered(const Vec& x, const Vec& w, const Vec& t) {
  if (w.size() != x.size() || t.size() != x.size()) {
    throw std::invalid_argument("proxy_ordered requires |x| = |w| = |t|");
  }
  check_nonnegative(x);
  check_nonnegative(w);
  check_nonnegative(t);
  if (!non_increasing(w)) throw std::invalid_argument("proxy_ordered: w must be non-increasing");
  if (!non_increasing(t)) throw std::invalid_argument("proxy_ordered: t must be non-increasing");
  const Eigen::Index d = x.size();
  double total = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double gap = w[i] - (i + 1 < d ? w[i + 1] : 0.0);
    if (gap == 0.0) continue;
    total += gap * proxy_top(t[i], x, static_cast<int>(i) + 1);
  }
  return total;
}

double attenuation(const NormSpec& norm) {
  const int d = norm.arity();
  if (d < 2) throw std::invalid_argument("attenuation undefined for arity 1");
  const double all = norm(prefix_ones(d, d));
  const double one = norm(prefix_ones(1, d));
  if (one <= 0.0 || all <= 0.0) {
    throw std::invalid_argument("attenuation needs positive norm values on unit vectors");
  }
  return (std::log2(all) - std::log2(one)) / std::log2(static_cast<double>(d));
}

std::pair<double, double> sandwich_bounds(const NormSpec& norm, const Vec& v) {
  if (v.size() != norm.arity()) throw std::invalid_argument("sandwich_bounds arity mismatch");
  check_nonnegative(v);
  const int d = norm.arity();
  const double h_ones = norm(prefix_ones(d, d));
  const double lo = v.sum() / d * h_ones;
  const double hi = (v.size() == 0 ? 0.0 : v.maxCoeff()) * h_ones;
  return {lo, hi};
}

OrderedSurrogate ordered_surrogate(const NormSpec& norm) {
  const int d = norm.arity();
  Vec w(d);
  double prev = 0.0;
  for (int j = 1; j <= d; ++j) {
    const double cur = norm(prefix_ones(j, d));
    w[j - 1] = cur - prev;
    prev = cur;
  }
  for (int i = 0; i < d; ++i) {
    if (w[i] < -kTol) {
      throw std::invalid_argument("ordered_surrogate: prefix-ones values decrease at " +
                                  std::to_string(i + 1) + "; source is not monotone");
    }
    w[i] = std::max(0.0, w[i]);
  }
  for (int i = 0; i + 1 < d; ++i) {
    if (w[i] + kTol < w[i + 1]) {
      throw std::invalid_argument(
          "ordered_surrogate: prefix-ones values are not concave (gap rises at index " +
          std::to_string(i + 1) + "); source is not a valid symmetric monotone norm");
    }
  }
  // Numerical noise can leave microscopic increases below kTol; clamp so the
  // weights form a valid ordered norm.
  for (int i = 0; i + 1 < d; ++i) w[i + 1] = std::min(w[i + 1], w[i]);

  OrderedSurrogate result;
  result.weights = w;
  switch (norm.kind()) {
    case NormKind::L1:
    case NormKind::Linf:
    case NormKind::Top:
    case NormKind::Ordered:
      result.exact = true;
      result.distortion_bound = 1.0;
      return result;
    default:
      break;
  }

  // Sampled distortion over a fixed seeded corpus. ord_w dominates the source
  // norm unconditionally, so only ord_w(x)/h(x) can exceed 1.
  result.exact = false;
  const NormSpec surrogate = NormSpec::ordered(w);
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(d));
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double worst = 1.0;
  auto probe = [&](const Vec& x) {
    const double h = norm(x);
    const double o = surrogate(x);
    if (h > kTol && o > kTol) {
      worst = std::max(worst, std::max(h / o, o / h));
    }
  };
  for (int j = 1; j <= d; ++j) probe(prefix_ones(j, d));
  for (int trial = 0; trial < 512; ++trial) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = unit();
    // Mix in sparse and heavy-tailed shapes.
    if (trial % 3 == 1) {
      for (int i = 0; i < d; ++i) {
        if (rng() % 2 == 0) x[i] = 0.0;
      }
    } else if (trial % 3 == 2) {
      for (int i = 0; i < d; ++i) x[i] = std::pow(x[i], 4.0);
    }
    probe(x);
  }
  result.distortion_bound = worst;
  return result;
}

}  // namespace ncc
