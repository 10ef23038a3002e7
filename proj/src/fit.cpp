#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "dimer_discord/constants.hpp"
#include "dimer_discord/core.hpp"
#include "dimer_discord/numerics.hpp"

namespace dimer {

namespace {

// Parameters: p(0) = ln|J/k_B|, p(1) = g (enters only as g^2).
class BleaneyBowersModel {
 public:
  BleaneyBowersModel(const MeasurementSeries& series, double sign) : series_(series), sign_(sign) {
    const auto n = static_cast<Eigen::Index>(series.rows.size());
    sqrt_weights_.resize(n);
    bool all_sigmas = !series.rows.empty();
    for (const auto& row : series.rows) all_sigmas = all_sigmas && row.sigma.has_value();
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = series.rows[static_cast<std::size_t>(i)];
      if (all_sigmas && !(*row.sigma > 0)) throw DataError("fit weights need strictly positive sigmas");
      sqrt_weights_(i) = all_sigmas ? 1.0 / *row.sigma : 1.0;
    }
  }

  double coupling(const Eigen::Vector2d& p) const { return sign_ * std::exp(p(0)); }

  /// Weighted residuals and, when jacobian is non-null, their Jacobian.
  Eigen::VectorXd residuals(const Eigen::Vector2d& p, Eigen::Matrix<double, Eigen::Dynamic, 2>* jacobian) const {
    const double j = coupling(p);
    const double g = p(1);
    const auto n = sqrt_weights_.size();
    Eigen::VectorXd r(n);
    if (jacobian) jacobian->resize(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = series_.rows[static_cast<std::size_t>(i)];
      const double t = row.t;
      const double x = -2.0 * j / t;
      double corr = 0.0, dcorr_dj = 0.0;
      if (std::abs(x) > detail::kZeroTemperatureGuard) {
        corr = j < 0 ? -1.0 : 1.0 / 3.0;
      } else {
        const double y = std::exp(x);
        corr = -std::expm1(x) / (3.0 + y);
        // dG/dJ = 8 y / (T (3 + y)^2)
        dcorr_dj = 8.0 / (t * (y + 6.0 + 9.0 / y));
      }
      const double prefactor = constants::kCuriePrefactor / (2.0 * t);
      const double chi = prefactor * g * g * (1.0 + corr);
      r(i) = sqrt_weights_(i) * (chi - row.value);
      if (jacobian) {
        (*jacobian)(i, 0) = sqrt_weights_(i) * prefactor * g * g * dcorr_dj * j;
        (*jacobian)(i, 1) = sqrt_weights_(i) * 2.0 * prefactor * g * (1.0 + corr);
      }
    }
    return r;
  }

 private:
  const MeasurementSeries& series_;
  double sign_;
  Eigen::VectorXd sqrt_weights_;
};

void validate_fit_series(const MeasurementSeries& series) {
  if (series.kind != SeriesKind::susceptibility) throw DataError("fit needs a susceptibility series");
  if (series.rows.size() < 3) throw DataError("fit needs at least 3 points");
  bool distinct = false;
  for (const auto& row : series.rows) {
    if (!(row.t > 0)) throw DataError("fit temperatures must be positive");
    distinct = distinct || row.t != series.rows.front().t;
  }
  if (!distinct) throw DataError("fit data are degenerate: all rows share one temperature");
}

}  // namespace

double bleaney_bowers_objective(const MeasurementSeries& series, double j_over_kb, double g) {
  if (j_over_kb == 0.0 || !(g > 0)) throw DomainError("objective needs J != 0 and g > 0");
  const BleaneyBowersModel model(series, j_over_kb < 0 ? -1.0 : 1.0);
  const Eigen::Vector2d p(std::log(std::abs(j_over_kb)), g);
  return model.residuals(p, nullptr).squaredNorm();
}

FitResult fit_bleaney_bowers(const MeasurementSeries& series, const DimerParameters& init,
                             const FitOptions& options) {
  init.validate();
  validate_fit_series(series);
  const BleaneyBowersModel model(series, init.j_over_kb < 0 ? -1.0 : 1.0);

  Eigen::Vector2d p(std::log(std::abs(init.j_over_kb)), init.g_factor ? init.g() : 2.0);
  Eigen::Matrix<double, Eigen::Dynamic, 2> jac;
  Eigen::VectorXd r = model.residuals(p, &jac);
  double cost = r.squaredNorm();

  FitResult result;
  result.evaluations = 1;
  double lambda = 1e-3;
  while (result.evaluations < options.max_evaluations) {
    ++result.iterations;
    const Eigen::Matrix2d normal = jac.transpose() * jac;
    const Eigen::Vector2d gradient = jac.transpose() * r;
    Eigen::Matrix2d damped = normal;
    damped.diagonal() += lambda * normal.diagonal().cwiseMax(1e-300);
    const Eigen::Vector2d step = damped.ldlt().solve(-gradient);
    const double relative_step = std::max(std::abs(step(0)), std::abs(step(1)) / std::abs(p(1)));

    const Eigen::Vector2d trial = p + step;
    Eigen::Matrix<double, Eigen::Dynamic, 2> trial_jac;
    const Eigen::VectorXd trial_r = model.residuals(trial, &trial_jac);
    ++result.evaluations;
    const double trial_cost = trial_r.squaredNorm();

    if (std::isfinite(trial_cost) && trial_cost <= cost) {
      p = trial;
      r = trial_r;
      jac = trial_jac;
      cost = trial_cost;
      lambda = std::max(lambda / 10.0, 1e-12);
      if (relative_step < options.relative_step_tolerance) {
        result.converged = true;
        break;
      }
    } else {
      // Rejected step already below the resolution of the parameters: no
      // further progress is possible in double precision.
      if (relative_step < 1e-14 || lambda > 1e15) {
        result.converged = relative_step < options.relative_step_tolerance;
        break;
      }
      lambda *= 10.0;
    }
  }

  result.j_over_kb = model.coupling(p);
  result.g_factor = std::abs(p(1));
  result.residual_norm = std::sqrt(cost);
  return result;
}

}  // namespace dimer
