#include "ergosol/rotation.hpp"

#include <cstddef>
#include <limits>

#include "ergosol/errors.hpp"

namespace ergosol {

namespace {

// Denominators can approach 2^62 before the recurrence q_j = a*q_{j-1} + q_{j-2}
// overflows for the coefficient sizes we accept.
constexpr std::int64_t kQLimit = std::int64_t{1} << 62;

}  // namespace

RotationNumber::RotationNumber(Kind kind, std::vector<int> preperiod, std::vector<int> period)
    : kind_(kind), preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (kind_ == Kind::periodic) {
    if (period_.empty()) throw ConfigError("periodic expansion needs a nonempty period");
  } else {
    if (!period_.empty()) throw ConfigError("only periodic expansions carry a period");
    if (preperiod_.empty()) throw ConfigError("empty continued fraction");
  }
  for (int a : preperiod_)
    if (a < 1) throw ConfigError("continued fraction coefficients must be >= 1");
  for (int a : period_)
    if (a < 1) throw ConfigError("continued fraction coefficients must be >= 1");

  // Convergents h_j/k_j of [0; a_1, a_2, ...].  Run until the denominator
  // saturates (periodic) or the prefix ends (truncated/terminating).
  std::int64_t h_prev = 1, h = 0;  // h_{-1}, h_0
  std::int64_t k_prev = 0, k = 1;  // k_{-1}, k_0
  std::size_t i = 1;
  while (true) {
    int a;
    if (i <= preperiod_.size()) {
      a = preperiod_[i - 1];
    } else if (kind_ == Kind::periodic) {
      a = period_[(i - preperiod_.size() - 1) % period_.size()];
    } else {
      break;
    }
    if (k > (kQLimit - k_prev) / a) break;  // next k would overflow
    std::int64_t hn = a * h + h_prev;
    std::int64_t kn = a * k + k_prev;
    h_prev = h;
    h = hn;
    k_prev = k;
    k = kn;
    ++i;
  }

  value_ = dd_from_ratio(h, k);
  // |alpha - h/k| <= 1/(k * k_next) and k_next >= k + k_prev.
  const double rep_err = 1e-31;  // double-double representation slack
  switch (kind_) {
    case Kind::terminating:
      value_error_ = rep_err;  // the value *is* h/k
      break;
    case Kind::periodic:
    case Kind::truncated:
      value_error_ = 1.0 / (static_cast<double>(k) * static_cast<double>(k + k_prev)) + rep_err;
      break;
  }
}

RotationNumber RotationNumber::periodic(std::vector<int> preperiod, std::vector<int> period) {
  return RotationNumber(Kind::periodic, std::move(preperiod), std::move(period));
}

RotationNumber RotationNumber::truncated(std::vector<int> coefficients) {
  return RotationNumber(Kind::truncated, std::move(coefficients), {});
}

RotationNumber RotationNumber::terminating(std::vector<int> coefficients) {
  return RotationNumber(Kind::terminating, std::move(coefficients), {});
}

RotationNumber RotationNumber::golden() { return periodic({}, {1}); }

int RotationNumber::coefficient(std::size_t i) const {
  if (i == 0) throw ConfigError("continued fraction coefficients are 1-based");
  if (i <= preperiod_.size()) return preperiod_[i - 1];
  if (kind_ == Kind::periodic) return period_[(i - preperiod_.size() - 1) % period_.size()];
  throw ConfigError("coefficient index beyond stored expansion");
}

std::size_t RotationNumber::known_coefficients() const {
  return kind_ == Kind::periodic ? std::numeric_limits<std::size_t>::max() : preperiod_.size();
}

std::vector<CFTerm> RotationNumber::denominator_ladder(std::int64_t q_cap) const {
  std::vector<CFTerm> ladder;
  std::int64_t k_prev = 0, k = 1;  // k_0 = 1
  std::size_t j = 0;               // ladder row = convergent index
  while (k <= q_cap) {
    std::size_t coeff_index = j + 1;  // a_{j+1}
    if (kind_ != Kind::periodic && coeff_index > preperiod_.size()) break;
    int a = coefficient(coeff_index);
    ladder.push_back({k, a});
    if (k > (kQLimit - k_prev) / a) break;
    std::int64_t kn = a * k + k_prev;
    k_prev = k;
    k = kn;
    ++j;
  }
  return ladder;
}

}  // namespace ergosol
