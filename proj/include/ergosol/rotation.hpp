#pragma once

#include <cstdint>
#include <vector>

#include "ergosol/numeric.hpp"

namespace ergosol {

// One row of the continued-fraction denominator ladder: denominator q of a
// convergent together with the coefficient a that multiplies q in the next
// denominator.  Consumers use this to decompose an orbit segment into blocks
// over which Birkhoff sums of arc indicators deviate from the mean by at most
// the indicator's total variation (= 2), which is what certifies the orbit
// equidistribution error bounds downstream.
struct CFTerm {
  std::int64_t q;
  std::int64_t next_coeff;
};

// Irrational number in (0,1) described by its continued fraction
// [0; a_1, a_2, ...].  Three flavours:
//   - periodic: eventually periodic coefficients (quadratic irrational, exact)
//   - truncated: a finite prefix understood as a truncation of an infinite
//     expansion; the truncation error is recorded and certified
//   - terminating: a complete finite expansion, i.e. a rational number.
//     Constructible (tests need it) but rejected by map constructors.
class RotationNumber {
 public:
  enum class Kind { periodic, truncated, terminating };

  static RotationNumber periodic(std::vector<int> preperiod, std::vector<int> period);
  static RotationNumber truncated(std::vector<int> coefficients);
  static RotationNumber terminating(std::vector<int> coefficients);
  static RotationNumber golden();  // [0; 1, 1, 1, ...]

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::terminating; }

  // Best double-double approximation of the value; for periodic expansions
  // this is exact to ~1e-32, for truncated ones value_error() dominates.
  DD value_dd() const { return value_; }
  double value() const { return value_.hi + value_.lo; }

  // Certified bound on |stored value - mathematical value|.
  double value_error() const { return value_error_; }

  const std::vector<int>& preperiod() const { return preperiod_; }
  const std::vector<int>& period() const { return period_; }

  // Coefficient a_i (1-based).  For truncated/terminating expansions i must
  // stay within the stored prefix.
  int coefficient(std::size_t i) const;
  std::size_t known_coefficients() const;  // SIZE_MAX when periodic

  // Convergent denominators q_j with their successor coefficients a_{j+1},
  // ascending, including every q_j <= q_cap (and q_0 = 1).  For truncated
  // expansions the ladder stops at the last known convergent even if below
  // q_cap; callers must handle the shortfall conservatively.
  std::vector<CFTerm> denominator_ladder(std::int64_t q_cap) const;

 private:
  RotationNumber(Kind kind, std::vector<int> preperiod, std::vector<int> period);

  Kind kind_;
  std::vector<int> preperiod_;  // for truncated/terminating: all coefficients
  std::vector<int> period_;     // nonempty iff periodic
  DD value_{};
  double value_error_ = 0.0;
};

}  // namespace ergosol
