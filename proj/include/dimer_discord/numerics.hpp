#pragma once

// Scalar numerical machinery: Lambert W, bracketed roots, curve crossings,
// golden-section maximization, data integration with an analytic tail,
// secant error propagation and the Bleaney-Bowers least-squares fit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "dimer_discord/errors.hpp"
#include "dimer_discord/series.hpp"
#include "dimer_discord/types.hpp"

namespace dimer {

/// Principal branch W0 of the Lambert function, W e^W = x, for x >= -1/e.
/// Halley iteration from ln(1 + x).
template <typename Scalar>
Scalar lambert_w(Scalar x) {
  using std::abs;
  using std::exp;
  using std::log;
  const Scalar branch_point = -Scalar(1) / exp(Scalar(1));
  if (!(x >= branch_point)) throw DomainError("lambert_w: argument below -1/e");
  if (x == Scalar(0)) return Scalar(0);
  if (x == branch_point) return Scalar(-1);

  constexpr int kMaxIterations = 50;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar w = log(Scalar(1) + x);
  for (int i = 0; i < kMaxIterations; ++i) {
    const Scalar ew = exp(w);
    const Scalar f = w * ew - x;
    const Scalar wp1 = w + Scalar(1);
    if (wp1 == Scalar(0)) break;
    const Scalar step = f / (ew * wp1 - (w + Scalar(2)) * f / (Scalar(2) * wp1));
    w -= step;
    if (abs(step) <= Scalar(4) * eps * (Scalar(1) + abs(w))) break;
  }
  return w;
}

template <typename Scalar = double>
struct Bracket {
  Scalar lo{};
  Scalar hi{};
  Scalar f_lo{};
  Scalar f_hi{};
};

/// Evaluates f at both ends of [lo, hi].
template <typename F, typename Scalar>
Bracket<Scalar> make_bracket(F&& f, Scalar lo, Scalar hi) {
  if (!(lo < hi)) throw BracketError("bracket requires lo < hi");
  return Bracket<Scalar>{lo, hi, f(lo), f(hi)};
}

/// Brent's method: inverse quadratic / secant steps safeguarded by bisection.
/// Stops when the bracketing interval is below tol (plus a machine-precision
/// floor). At most 100 iterations.
template <typename F, typename Scalar>
Scalar find_root(F&& f, Bracket<Scalar> bracket, Scalar tol) {
  using std::abs;
  constexpr int kMaxIterations = 100;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();

  Scalar a = bracket.lo, b = bracket.hi, fa = bracket.f_lo, fb = bracket.f_hi;
  if (fa == Scalar(0)) return a;
  if (fb == Scalar(0)) return b;
  if ((fa > 0) == (fb > 0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << static_cast<double>(a) << ", " << static_cast<double>(b) << "]";
    throw BracketError(msg.str());
  }
  Scalar c = b, fc = fb, d = b - a, e = d;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (abs(fc) < abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const Scalar tol1 = Scalar(2) * eps * abs(b) + Scalar(0.5) * tol;
    const Scalar xm = Scalar(0.5) * (c - b);
    if (abs(xm) <= tol1 || fb == Scalar(0)) return b;
    if (abs(e) >= tol1 && abs(fa) > abs(fb)) {
      const Scalar s = fb / fa;
      Scalar p, q;
      if (a == c) {
        p = Scalar(2) * xm * s;
        q = Scalar(1) - s;
      } else {
        const Scalar qa = fa / fc;
        const Scalar r = fb / fc;
        p = s * (Scalar(2) * xm * qa * (qa - r) - (b - a) * (r - Scalar(1)));
        q = (qa - Scalar(1)) * (r - Scalar(1)) * (s - Scalar(1));
      }
      if (p > 0) q = -q;
      p = abs(p);
      const Scalar min1 = Scalar(3) * xm * q - abs(tol1 * q);
      const Scalar min2 = abs(e * q);
      if (Scalar(2) * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += abs(d) > tol1 ? d : (xm >= 0 ? abs(tol1) : -abs(tol1));
    fb = f(b);
  }
  throw ConvergenceError("find_root: tolerance not reached in 100 iterations");
}

template <typename F, typename Scalar>
Scalar find_root(F&& f, Scalar lo, Scalar hi, Scalar tol) {
  return find_root(f, make_bracket(f, lo, hi), tol);
}

template <typename Scalar = double>
struct Crossing {
  Scalar t{};
  Scalar value{};
};

/// Point inside [lo, hi] where curves a and b meet; value is a(t).
template <typename A, typename B, typename Scalar>
Crossing<Scalar> find_crossing(A&& curve_a, B&& curve_b, Scalar lo, Scalar hi,
                               Scalar tol = Scalar(1e-12)) {
  auto diff = [&](Scalar t) { return curve_a(t) - curve_b(t); };
  const auto bracket = make_bracket(diff, lo, hi);
  if (bracket.f_lo == Scalar(0) && bracket.f_hi == Scalar(0) &&
      diff(Scalar(0.5) * (lo + hi)) == Scalar(0))
    throw BracketError("curves coincide on the bracket: no isolated crossing");
  const Scalar t = find_root(diff, bracket, tol);
  return Crossing<Scalar>{t, curve_a(t)};
}

template <typename Scalar = double>
struct Extremum {
  Scalar x{};
  Scalar value{};
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi],
/// refined until the interval is below 1e-9 (hi - lo).
template <typename F, typename Scalar>
Extremum<Scalar> maximize_scalar(F&& f, Scalar lo, Scalar hi) {
  using std::sqrt;
  if (!(lo < hi)) throw BracketError("maximize_scalar requires lo < hi");
  constexpr int kMaxIterations = 200;
  const Scalar inv_phi = (sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  const Scalar tol = Scalar(1e-9) * (hi - lo);

  Scalar a = lo, b = hi;
  Scalar c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  Scalar fc = f(c), fd = f(d);
  int iter = 0;
  for (; iter < kMaxIterations && (b - a) > tol; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (iter == kMaxIterations) throw ConvergenceError("maximize_scalar: iteration limit reached");
  const Scalar x = Scalar(0.5) * (a + b);
  return Extremum<Scalar>{x, f(x)};
}

/// Asymptotic specific-heat tail c_m/R = coefficient / T^2 for T >= t_start.
struct TailModel {
  double coefficient = 0.0;  // K^2
  double t_start = 1.0;      // K
};

struct IntegrationResult {
  double value = 0.0;
  /// Row indices whose negative values were clamped to zero.
  std::vector<std::size_t> clamped_rows;
};

/// Integral of c_m/R from 0 to infinity: a linear ramp from (0, 0) to the
/// first point, trapezoids over the data, then coefficient / t_start.
IntegrationResult integrate_series_with_tail(const MeasurementSeries& series, const TailModel& tail);

/// Integral of c_m/R from 0 to t over the data only (ramp + trapezoids,
/// linear interpolation inside the last segment). Requires t <= last T.
IntegrationResult integrate_series_up_to(const MeasurementSeries& series, double t);

struct PropagatedValue {
  double value = 0.0;
  double sigma = 0.0;
  /// One endpoint of x +- sigma fell outside the domain of f.
  bool one_sided = false;
};

/// First-order propagation with the secant slope over the full error bar:
/// sigma_out = |f(x + s) - f(x - s)| / 2.
template <typename F>
PropagatedValue propagate_uncertainty(F&& f, ValueWithUncertainty x) {
  using std::abs;
  if (!(x.sigma >= 0)) throw DomainError("uncertainty must be non-negative");
  PropagatedValue out;
  out.value = f(x.value);
  if (x.sigma == 0) return out;
  auto try_eval = [&](double at) -> std::optional<double> {
    try {
      return f(at);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  const auto up = try_eval(x.value + x.sigma);
  const auto down = try_eval(x.value - x.sigma);
  if (up && down) {
    out.sigma = abs(*up - *down) / 2;
  } else if (up || down) {
    out.sigma = abs((up ? *up : *down) - out.value);
    out.one_sided = true;
  } else {
    throw DomainError("propagate_uncertainty: function undefined on both sides of the value");
  }
  return out;
}

struct FitResult {
  double j_over_kb = 0.0;
  double g_factor = 0.0;
  /// sqrt(sum w_i r_i^2) at the optimum.
  double residual_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct FitOptions {
  int max_evaluations = 10000;
  double relative_step_tolerance = 1e-8;
};

/// Weighted least-squares fit of the Bleaney-Bowers susceptibility to a
/// per-dimer chi(T) series (weights 1/sigma^2 when every row has sigma).
/// Levenberg-Marquardt in (ln|J|, g); the sign of J is taken from init.
FitResult fit_bleaney_bowers(const MeasurementSeries& series, const DimerParameters& init,
                             const FitOptions& options = {});

/// Weighted sum of squared residuals of the model at (j_over_kb, g).
double bleaney_bowers_objective(const MeasurementSeries& series, double j_over_kb, double g);

}  // namespace dimer
