#include "ergosol/pairing.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "ergosol/errors.hpp"
#include "ergosol/numeric.hpp"

namespace ergosol {

PairingResult rs_pairing_periods(const SolenoidSpec& spec,
                                 const HomologyBasis& basis,
                                 const AbstractForm& form,
                                 double measure_scale) {
  form.validate(basis);
  for (const BlockSpec& b : spec.blocks())
    if (b.homology_coords.size() != basis.rank)
      throw ConfigError("block '" + b.label +
                        "' does not match the basis rank");
  const std::vector<double> mu = spec.partition().measures();
  KahanSum total;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double period = 0.0;  // <C_i, omega>
    for (std::size_t j = 0; j < basis.rank; ++j)
      period += static_cast<double>(spec.block(i).homology_coords[j]) *
                form.periods[j];
    total.add(mu[i] * period);
  }
  return PairingResult{total.value() * measure_scale, 0.0, "periods"};
}

namespace {

// One straight segment x(t) = origin + t * direction, t in [0,1], against a
// fixed form.  Panels are cut wherever a coordinate offset from the ball
// center wraps past +-1/2 and wherever |offset| crosses a bump shell, then
// capped at `cap` in t; each panel gets a single non-adaptive Kronrod rule.
struct SegmentIntegrator {
  const TorusForm& form;
  const TorusModel& model;
  std::vector<double> origin;
  std::vector<double> direction;

  double integrand(double t) const {
    std::vector<double> x(origin.size());
    for (std::size_t j = 0; j < x.size(); ++j)
      x[j] = origin[j] + t * direction[j];
    const std::vector<double> cov = torus_form_covector(form, model, x);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += cov[j] * direction[j];
    return s;
  }

  // Offsets from the ball center at t = 0 (unwrapped; wraps handled as
  // breakpoints).
  std::vector<double> base_offset() const {
    std::vector<double> w(origin.size());
    for (std::size_t j = 0; j < origin.size(); ++j) {
      const double center =
          model.ball_center.empty() ? 0.5 : model.ball_center[j];
      double d = frac(origin[j] - center);
      if (d >= 0.5) d -= 1.0;
      w[j] = d;
    }
    return w;
  }

  std::vector<double> breakpoints() const {
    std::vector<double> cuts;
    const std::vector<double> w0 = base_offset();
    // Wrap instants: w_j(t) = w0_j + t v_j crosses a half-integer.
    for (std::size_t j = 0; j < w0.size(); ++j) {
      const double v = direction[j];
      if (v == 0.0) continue;
      const double lo = std::min(w0[j], w0[j] + v);
      const double hi = std::max(w0[j], w0[j] + v);
      for (double level = std::floor(lo - 0.5) + 0.5; level <= hi;
           level += 1.0) {
        const double t = (level - w0[j]) / v;
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());

    // Shell crossings inside each wrap-free stretch: |w(t)|^2 is quadratic.
    std::vector<double> shells = {form.ball_inner, form.ball_outer,
                                  form.probe_inner,
                                  0.5 * (form.probe_inner + form.probe_outer),
                                  form.probe_outer};
    std::vector<double> more;
    double v2 = 0.0;
    for (double v : direction) v2 += v * v;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double t0 = cuts[s], t1 = cuts[s + 1];
      if (!(t1 > t0)) continue;
      const double tm = 0.5 * (t0 + t1);
      // Wrapped offset at the midpoint anchors this stretch.
      std::vector<double> wm(origin.size());
      double r2 = 0.0, wv = 0.0;
      for (std::size_t j = 0; j < origin.size(); ++j) {
        const double center =
            model.ball_center.empty() ? 0.5 : model.ball_center[j];
        double d = frac(origin[j] + tm * direction[j] - center);
        if (d >= 0.5) d -= 1.0;
        wm[j] = d;
        r2 += d * d;
        wv += d * direction[j];
      }
      if (v2 == 0.0) continue;
      for (double shell : shells) {
        // |w(tm) + (t - tm) v|^2 = shell^2
        const double cterm = r2 - shell * shell;
        const double disc = wv * wv - v2 * cterm;
        if (disc <= 0.0) continue;
        const double root = std::sqrt(disc);
        for (double dt : {(-wv - root) / v2, (-wv + root) / v2}) {
          const double t = tm + dt;
          if (t > t0 && t < t1) more.push_back(t);
        }
      }
    }
    cuts.insert(cuts.end(), more.begin(), more.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
  }

  // Integral over [0,1] with panels capped at `cap`; adds the Kronrod error
  // estimates onto `error_acc`.
  double integrate(double cap, double& error_acc) const {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const std::vector<double> cuts = breakpoints();
    KahanSum total;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double t0 = cuts[s], t1 = cuts[s + 1];
      if (!(t1 > t0)) continue;
      const int pieces =
          std::max(1, static_cast<int>(std::ceil((t1 - t0) / cap)));
      for (int p = 0; p < pieces; ++p) {
        const double a = t0 + (t1 - t0) * p / pieces;
        const double b = t0 + (t1 - t0) * (p + 1) / pieces;
        double err = 0.0;
        total.add(GK::integrate([this](double t) { return integrand(t); }, a,
                                b, 0, 0.0, &err));
        error_acc += err;
      }
    }
    return total.value();
  }
};

// Minimal wrapped displacement from a to b, coordinatewise.
std::vector<double> wrapped_chord(const std::vector<double>& a,
                                  const std::vector<double>& b) {
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    double d = frac(b[j] - a[j]);
    if (d >= 0.5) d -= 1.0;
    v[j] = d;
  }
  return v;
}

}  // namespace

PairingResult rs_pairing_quadrature(const SolenoidSpec& spec,
                                    const TorusModel& model,
                                    const TorusForm& form, double quad_tol,
                                    double measure_scale) {
  if (!(quad_tol > 0.0)) throw ConfigError("quadrature tolerance must be > 0");
  const std::size_t rank = spec.blocks().front().homology_coords.size();
  for (const BlockSpec& b : spec.blocks())
    if (b.homology_coords.size() != rank)
      throw ConfigError("blocks disagree on the homology rank");
  model.validate(spec.dimension(), rank);
  form.validate(model);

  const MeasuredPartition& part = spec.partition();
  const std::vector<double> mu = part.measures();
  const std::size_t n = static_cast<std::size_t>(model.dimension);

  using Gauss = boost::math::quadrature::gauss<double, 16>;
  const auto& gl_x = Gauss::abscissa();  // positive half-nodes on [-1, 1]
  const auto& gl_w = Gauss::weights();

  double cap = 0.05;
  for (int round = 0;; ++round) {
    KahanSum total;
    double error_acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      std::vector<double> wrap(n, 0.0);
      for (std::size_t j = 0; j < rank; ++j)
        wrap[j] = static_cast<double>(spec.block(i).homology_coords[j]);

      KahanSum block_sum;
      double block_err = 0.0;
      auto leaf_value = [&](double theta) {
        const std::vector<double> base = model.transversal_point(theta);
        SegmentIntegrator loop{form, model, base, wrap};
        double v = loop.integrate(cap, block_err);
        const double theta_next = spec.map().rotate_angle(theta, 1);
        const std::vector<double> next = model.transversal_point(theta_next);
        SegmentIntegrator collar{form, model, base,
                                 wrapped_chord(base, next)};
        v += collar.integrate(cap, block_err);
        return v;
      };
      // 16-point Gauss over the block arc in collapse coordinates.
      const double cut = part.cuts()[i];
      const double len = mu[i];
      for (unsigned q = 0; q < gl_x.size(); ++q) {
        for (double sgn : {-1.0, 1.0}) {
          if (gl_x[q] == 0.0 && sgn < 0.0) continue;
          const double t = 0.5 + 0.5 * sgn * gl_x[q];
          block_sum.add(0.5 * gl_w[q] * leaf_value(frac(cut + t * len)));
        }
      }
      total.add(len * block_sum.value());
      error_acc += len * block_err;
    }
    if (error_acc <= quad_tol)
      return PairingResult{total.value() * measure_scale, error_acc,
                           "quadrature"};
    if (round >= 5)
      throw VerificationError(
          "leaf quadrature did not converge: estimate " +
              std::to_string(total.value() * measure_scale) + ", residual " +
              std::to_string(error_acc) + " above tolerance " +
              std::to_string(quad_tol),
          error_acc);
    cap *= 0.5;
  }
}

}  // namespace ergosol
