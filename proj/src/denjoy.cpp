#include "ergosol/denjoy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ergosol/errors.hpp"

namespace ergosol {

namespace {

constexpr std::int64_t kMinTable = std::int64_t{1} << 14;
constexpr std::int64_t kMaxTable = std::int64_t{1} << 23;  // ~8.4e6 per side

// Largest denominator reachable from the ladder: the successor of its last
// row (q_{j+1} = a_{j+1} q_j + q_{j-1}).
double ladder_top(const std::vector<CFTerm>& ladder) {
  if (ladder.empty()) return 1.0;
  double q_prev = ladder.size() >= 2 ? static_cast<double>(ladder[ladder.size() - 2].q) : 0.0;
  const CFTerm& last = ladder.back();
  return static_cast<double>(last.next_coeff) * static_cast<double>(last.q) + q_prev;
}

// A priori residual of replacing the |n| > N tail of the gap series by its
// equidistributed mean.  See the class comment in denjoy.hpp.
double series_residual_bound(const RotationNumber& rot, const GapSchedule& gaps,
                             std::int64_t N) {
  std::vector<CFTerm> ladder = rot.denominator_ladder(std::int64_t{1} << 50);
  double per_side = 0.0;
  for (const CFTerm& t : ladder) {
    double contrib = static_cast<double>(t.next_coeff) * gaps.length(N + t.q);
    per_side += contrib;
    if (contrib < 1e-22) break;  // denominators grow at least geometrically
  }
  per_side *= 2.0;
  per_side += gaps.tail_mass(N) / ladder_top(ladder);
  return 2.0 * per_side + gaps.tail_mass_error(N);
}

}  // namespace

DenjoyMap::DenjoyMap(std::optional<RotationNumber> rotation, GapSchedule gaps, DD alpha,
                     double seed_angle, double tol)
    : rotation_(std::move(rotation)),
      gaps_(gaps),
      alpha_(alpha),
      seed_(frac(seed_angle)),
      default_tol_(tol) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
}

DenjoyMap DenjoyMap::build(const RotationNumber& alpha, const GapSchedule& gaps,
                           double seed_angle, double tol) {
  if (alpha.is_rational())
    throw ConstructionError("rotation number is rational (terminating expansion); "
                            "the blow-up needs a free orbit");
  DenjoyMap map(alpha, gaps, alpha.value_dd(), seed_angle, tol);
  if (gaps.degenerate()) {
    map.certified_error_ = 1e-15;
    return map;
  }

  std::int64_t n_half = 0;
  double bound = 0.0;
  for (std::int64_t n = kMinTable; n <= kMaxTable; n *= 2) {
    bound = series_residual_bound(alpha, gaps, n);
    if (bound + 1e-15 <= tol) {
      n_half = n;
      break;
    }
  }
  if (n_half == 0)
    throw ConstructionError("gap series cannot be certified to the requested tolerance "
                            "within the table budget; relax tol or supply a faster-decaying "
                            "schedule / longer expansion");
  map.build_table(n_half);
  map.certified_error_ = bound + 1e-15;
  return map;
}

DenjoyMap DenjoyMap::rigid_rotation(const RotationNumber& alpha) {
  if (alpha.is_rational())
    throw ConstructionError("rotation number is rational (terminating expansion)");
  DenjoyMap map(alpha, GapSchedule(0.0, 2.0), alpha.value_dd(), 0.0, 1e-12);
  map.certified_error_ = 1e-15;
  return map;
}

DenjoyMap DenjoyMap::unchecked_rotation(double alpha_value) {
  DenjoyMap map(std::nullopt, GapSchedule(0.0, 2.0), DD{frac(alpha_value), 0.0}, 0.0, 1e-12);
  map.certified_error_ = 1e-15;
  return map;
}

void DenjoyMap::build_table(std::int64_t n_half) {
  n_half_ = n_half;
  const std::size_t count = static_cast<std::size_t>(2 * n_half + 1);
  std::vector<double> raw(count);
  for (std::size_t i = 0; i < count; ++i)
    raw[i] = frac_orbit(seed_, static_cast<std::int64_t>(i) - n_half, alpha_);

  std::vector<std::int32_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&raw](std::int32_t a, std::int32_t b) { return raw[a] < raw[b]; });

  angles_.resize(count);
  cum_.resize(count);
  KahanSum acc;
  double min_spacing = 1.0;
  for (std::size_t j = 0; j < count; ++j) {
    angles_[j] = raw[order[j]];
    if (j > 0) min_spacing = std::min(min_spacing, angles_[j] - angles_[j - 1]);
    acc.add(gaps_.length(static_cast<std::int64_t>(order[j]) - n_half));
    cum_[j] = acc.value();
  }
  raw.clear();
  raw.shrink_to_fit();
  if (min_spacing <= 0.0)
    throw ConstructionError("orbit angles collided; rotation number too close to rational "
                            "at this table size");
  match_eps_ = std::min(1e-9, 0.25 * min_spacing);

  tail_ = gaps_.tail_mass(n_half);
  mass_ = cum_.back() + tail_;
  one_plus_tail_ = 1.0 + tail_;
  one_plus_mass_ = 1.0 + mass_;
}

void DenjoyMap::require_tol(double tol) const {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (tol < certified_error_)
    throw ConfigError("requested tolerance is below this map's certified construction "
                      "error; rebuild the map with a smaller tolerance");
}

double DenjoyMap::raw_blow_up(double theta) const {
  theta = frac(theta);
  if (rigid()) return theta;
  auto it = std::lower_bound(angles_.begin(), angles_.end(), theta);
  double prefix = it == angles_.begin() ? 0.0 : cum_[(it - angles_.begin()) - 1];
  return (theta * one_plus_tail_ + prefix) / one_plus_mass_;
}

double DenjoyMap::blow_up(double theta, double tol) const {
  require_tol(tol);
  return raw_blow_up(theta);
}

double DenjoyMap::gap_left_endpoint(std::size_t i) const {
  return (angles_[i] * one_plus_tail_ + cum_before(i)) / one_plus_mass_;
}

DenjoyMap::Probe DenjoyMap::probe(double x) const {
  x = frac(x);
  if (rigid()) return {x, false, 0.0, 0.0, 0.0};

  // Largest i with gap_left_endpoint(i) <= x.
  std::size_t lo = 0, hi = angles_.size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (gap_left_endpoint(mid) > x)
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo == 0) {
    double theta = std::min(x * one_plus_mass_ / one_plus_tail_, angles_.front());
    return {theta, false, 0.0, 0.0, 0.0};
  }
  std::size_t i = lo - 1;
  double left = gap_left_endpoint(i);
  double len = cum_[i] - cum_before(i);
  double right = left + len / one_plus_mass_;
  if (x <= right) return {angles_[i], true, left, right, len};

  double theta = (x * one_plus_mass_ - cum_[i]) / one_plus_tail_;
  // Collapse coordinates stay strictly below 1 even at the wrap.
  double next = i + 1 < angles_.size() ? angles_[i + 1] : std::nextafter(1.0, 0.0);
  theta = std::clamp(theta, angles_[i], next);
  return {theta, false, 0.0, 0.0, 0.0};
}

double DenjoyMap::collapse(double x, double tol) const {
  require_tol(tol);
  return probe(x).angle;
}

std::optional<std::size_t> DenjoyMap::find_angle(double theta) const {
  auto it = std::lower_bound(angles_.begin(), angles_.end(), theta);
  for (auto cand : {it, it == angles_.begin() ? it : it - 1}) {
    if (cand != angles_.end() && std::abs(*cand - theta) <= match_eps_)
      return static_cast<std::size_t>(cand - angles_.begin());
  }
  return std::nullopt;
}

std::pair<double, double> DenjoyMap::gap_interval(std::int64_t n) const {
  if (rigid()) throw ConfigError("rigid rotation has no gaps");
  if (n < -n_half_ || n > n_half_) throw ConfigError("gap index outside the tabulated range");
  auto idx = find_angle(orbit_angle(n));
  if (!idx) throw ConfigError("gap index outside the tabulated range");
  double left = gap_left_endpoint(*idx);
  double len = cum_[*idx] - cum_before(*idx);
  return {left, left + len / one_plus_mass_};
}

double DenjoyMap::apply(double x, double tol) const {
  require_tol(tol);
  x = frac(x);
  if (rigid()) return rotate_angle(x, 1);
  Probe p = probe(x);
  if (p.in_gap) {
    double next = rotate_angle(p.angle, 1);
    if (auto j = find_angle(next)) {
      // Gap onto gap, affinely; endpoints go to endpoints.
      double left = gap_left_endpoint(*j);
      double len = cum_[*j] - cum_before(*j);
      double y = left + (x - p.gap_left) * (len / p.gap_length);
      return std::clamp(y, left, left + len / one_plus_mass_);
    }
    // Image gap beyond the table: shorter than the certified error, so the
    // collapsed image is within tolerance.
    return raw_blow_up(next);
  }
  return raw_blow_up(rotate_angle(p.angle, 1));
}

double DenjoyMap::apply_inverse(double x, double tol) const {
  require_tol(tol);
  x = frac(x);
  if (rigid()) return rotate_angle(x, -1);
  Probe p = probe(x);
  if (p.in_gap) {
    double prev = rotate_angle(p.angle, -1);
    if (auto j = find_angle(prev)) {
      double left = gap_left_endpoint(*j);
      double len = cum_[*j] - cum_before(*j);
      double y = left + (x - p.gap_left) * (len / p.gap_length);
      return std::clamp(y, left, left + len / one_plus_mass_);
    }
    return raw_blow_up(prev);
  }
  return raw_blow_up(rotate_angle(p.angle, -1));
}

double DenjoyMap::arc_measure(double x1, double x2) const {
  x1 = frac(x1);
  x2 = frac(x2);
  if (x1 == x2) return 1.0;  // degenerate arc denotes the full circle
  double d = probe(x2).angle - probe(x1).angle;
  if (d < 0.0) d += 1.0;
  return d;
}

double DenjoyMap::estimate_rotation_number(double x0, std::int64_t iterations) const {
  if (iterations < 1) throw ConfigError("rotation estimate needs at least one iteration");
  const double r0 = apply(0.0, default_tol_);  // lift reference: h~(0) in (0,1)
  double x = frac(x0);
  double total = 0.0;
  for (std::int64_t i = 0; i < iterations; ++i) {
    double y = apply(x, default_tol_);
    double lift = y >= r0 ? y : y + 1.0;
    total += lift - x;
    x = y;
  }
  return total / static_cast<double>(iterations);
}

double DenjoyMap::orbit_angle(std::int64_t n) const { return frac_orbit(seed_, n, alpha_); }

double DenjoyMap::rotate_angle(double theta, std::int64_t steps) const {
  return frac_orbit(frac(theta), steps, alpha_);
}

}  // namespace ergosol
