#include "ergosol/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergosol/errors.hpp"
#include "ergosol/numeric.hpp"

namespace ergosol {

void AbstractForm::validate(const HomologyBasis& basis) const {
  if (periods.size() != basis.rank)
    throw ConfigError("form has " + std::to_string(periods.size()) +
                      " periods for a rank-" + std::to_string(basis.rank) +
                      " basis");
  if (is_exact)
    for (double p : periods)
      if (p != 0.0)
        throw ConfigError("an exact form must have vanishing periods");
}

AbstractForm abstract_form_from_column(const HomologyBasis& basis,
                                       std::size_t column) {
  if (basis.periods.empty() || column >= basis.periods.front().size())
    throw ConfigError("period matrix has no column " + std::to_string(column));
  AbstractForm f;
  f.periods.reserve(basis.rank);
  for (const auto& row : basis.periods) f.periods.push_back(row[column]);
  return f;
}

void TorusModel::validate(int degree, std::size_t rank) const {
  if (degree != 1)
    throw ConfigError(
        "the concrete torus backend handles 1-dimensional blocks only");
  if (dimension < 2 * degree + 1)
    throw ConfigError("torus dimension must be at least 2k+1");
  if (rank > static_cast<std::size_t>(dimension))
    throw ConfigError("torus needs one coordinate circle per basis cycle");
  if (!ball_center.empty() &&
      ball_center.size() != static_cast<std::size_t>(dimension))
    throw ConfigError("ball center must have one entry per torus coordinate");
  if (!(transversal_radius > 0.0 && transversal_radius < 0.05))
    throw ConfigError("transversal radius must lie in (0, 0.05)");
}

std::vector<double> TorusModel::transversal_point(double theta) const {
  std::vector<double> x =
      ball_center.empty()
          ? std::vector<double>(static_cast<std::size_t>(dimension), 0.5)
          : ball_center;
  const double a = 2.0 * 3.14159265358979323846 * theta;
  x[x.size() - 2] = frac(x[x.size() - 2] + transversal_radius * std::cos(a));
  x[x.size() - 1] = frac(x[x.size() - 1] + transversal_radius * std::sin(a));
  return x;
}

void TorusForm::validate(const TorusModel& model) const {
  if (coefficients.size() != static_cast<std::size_t>(model.dimension))
    throw ConfigError("form needs one coefficient per torus coordinate");
  if (!(0.0 < ball_inner && ball_inner < ball_outer && ball_outer < 0.25))
    throw ConfigError("ball shells must satisfy 0 < inner < outer < 1/4");
  if (!(model.transversal_radius < ball_inner))
    throw ConfigError("the transversal circle must sit inside the inner ball");
  if (!(ball_outer < probe_inner && probe_inner < probe_outer &&
        probe_outer < 0.5))
    throw ConfigError(
        "probe annulus must satisfy ball_outer < inner < outer < 1/2");
}

AbstractForm TorusForm::abstract_periods(std::size_t rank) const {
  if (rank > coefficients.size())
    throw ConfigError("form lives on a torus of dimension below the rank");
  AbstractForm f;
  f.periods.assign(coefficients.begin(),
                   coefficients.begin() + static_cast<std::ptrdiff_t>(rank));
  f.is_exact = std::all_of(coefficients.begin(), coefficients.end(),
                           [](double c) { return c == 0.0; });
  return f;
}

namespace {

struct Offset {
  std::vector<double> w;  // wrapped offset from the ball center
  double r = 0.0;         // |w|
};

Offset wrapped_offset(const TorusModel& model, const std::vector<double>& x) {
  Offset o;
  o.w.resize(x.size());
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double center = model.ball_center.empty() ? 0.5 : model.ball_center[j];
    double d = frac(x[j] - center);
    if (d >= 0.5) d -= 1.0;
    o.w[j] = d;
    s += d * d;
  }
  o.r = std::sqrt(s);
  return o;
}

// Ball cutoff: 1 on [0, inner], 0 on [outer, inf), quintic in between.
double ball_cut(const TorusForm& f, double r) {
  if (r <= f.ball_inner) return 1.0;
  if (r >= f.ball_outer) return 0.0;
  return 1.0 - smoothstep5((r - f.ball_inner) / (f.ball_outer - f.ball_inner));
}

double ball_cut_deriv(const TorusForm& f, double r) {
  if (r <= f.ball_inner || r >= f.ball_outer) return 0.0;
  const double h = f.ball_outer - f.ball_inner;
  return -smoothstep5_deriv((r - f.ball_inner) / h) / h;
}

// Annulus probe profile: 0 outside [inner, outer], rises to 1 at the middle.
double probe_cut(const TorusForm& f, double r) {
  const double mid = 0.5 * (f.probe_inner + f.probe_outer);
  if (r <= f.probe_inner || r >= f.probe_outer) return 0.0;
  if (r <= mid) return smoothstep5((r - f.probe_inner) / (mid - f.probe_inner));
  return 1.0 - smoothstep5((r - mid) / (f.probe_outer - mid));
}

double probe_cut_deriv(const TorusForm& f, double r) {
  const double mid = 0.5 * (f.probe_inner + f.probe_outer);
  if (r <= f.probe_inner || r >= f.probe_outer) return 0.0;
  if (r <= mid) {
    const double h = mid - f.probe_inner;
    return smoothstep5_deriv((r - f.probe_inner) / h) / h;
  }
  const double h = f.probe_outer - mid;
  return -smoothstep5_deriv((r - mid) / h) / h;
}

}  // namespace

double torus_psi(const TorusForm& form, const TorusModel& model,
                 const std::vector<double>& x) {
  const Offset o = wrapped_offset(model, x);
  double cw = 0.0;
  for (std::size_t j = 0; j < o.w.size(); ++j) cw += form.coefficients[j] * o.w[j];
  return ball_cut(form, o.r) * cw;
}

double torus_probe(const TorusForm& form, const TorusModel& model,
                   const std::vector<double>& x) {
  const Offset o = wrapped_offset(model, x);
  return form.probe_amplitude * probe_cut(form, o.r);
}

std::vector<double> torus_form_covector(const TorusForm& form,
                                        const TorusModel& model,
                                        const std::vector<double>& x) {
  const Offset o = wrapped_offset(model, x);
  const double b = ball_cut(form, o.r);
  const double bp = ball_cut_deriv(form, o.r);
  const double gp = form.probe_amplitude * probe_cut_deriv(form, o.r);
  double cw = 0.0;
  for (std::size_t j = 0; j < o.w.size(); ++j) cw += form.coefficients[j] * o.w[j];

  std::vector<double> out(o.w.size());
  for (std::size_t j = 0; j < o.w.size(); ++j) {
    // grad r = w / r; every radial term carries a derivative factor that
    // vanishes identically at r = 0, so the flat-center case is safe.
    const double radial = (o.r > 0.0) ? o.w[j] / o.r : 0.0;
    const double grad_psi = bp * radial * cw + b * form.coefficients[j];
    const double grad_probe = gp * radial;
    out[j] = form.coefficients[j] - grad_psi + grad_probe;
  }
  return out;
}

TorusForm combine(double a, const TorusForm& f, double b, const TorusForm& g) {
  if (f.coefficients.size() != g.coefficients.size() ||
      f.ball_inner != g.ball_inner || f.ball_outer != g.ball_outer ||
      f.probe_inner != g.probe_inner || f.probe_outer != g.probe_outer)
    throw ConfigError("can only combine forms sharing shell radii");
  TorusForm out = f;
  for (std::size_t j = 0; j < out.coefficients.size(); ++j)
    out.coefficients[j] = a * f.coefficients[j] + b * g.coefficients[j];
  out.probe_amplitude = a * f.probe_amplitude + b * g.probe_amplitude;
  return out;
}

}  // namespace ergosol
