#ifndef NCC_COMMON_HPP
#define NCC_COMMON_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Single global tolerance for tightness/equality comparisons of distances,
// dual values and costs. Event ordering in the primal-dual ascent depends on
// it being uniform across the code base.
inline constexpr double kTol = 1e-9;

// Enumeration exceeded its configured cap. Carries the offending count so
// callers can report a sizing diagnostic instead of silently truncating.
class SizingError : public std::runtime_error {
 public:
  SizingError(const std::string& what, double attempted, double cap)
      : std::runtime_error(what + " (needs ~" + std::to_string(attempted) +
                           " states, cap " + std::to_string(cap) + ")"),
        attempted_(attempted),
        cap_(cap) {}

  double attempted() const { return attempted_; }
  double cap() const { return cap_; }

 private:
  double attempted_;
  double cap_;
};

// A required pluggable subroutine is missing or misconfigured.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ncc

#endif  // NCC_COMMON_HPP
