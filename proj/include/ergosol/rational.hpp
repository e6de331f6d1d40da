#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

// Exact rational scalar used wherever the contracts promise exactness:
// target normalization, partition cuts in exact mode, and homology-class
// combinations.  Desk-scale inputs keep numerators/denominators far from
// the int64 range.

namespace ergosol {

using Rat = boost::rational<std::int64_t>;

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Accepts "3/10", "-2", "0.3", "1e-2"-free decimal forms.  Decimal strings
// convert exactly (0.3 -> 3/10), so CLI-facing weights stay rational.
Rat parse_rational(const std::string& text);

std::string format_rational(const Rat& r);

std::vector<Rat> parse_rational_list(const std::string& csv);

}  // namespace ergosol
