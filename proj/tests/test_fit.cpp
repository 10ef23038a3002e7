#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dimer_discord/numerics.hpp"
#include "dimer_discord/thermo.hpp"

using dimer::DimerParameters;
using dimer::MeasurementSeries;

namespace {

MeasurementSeries synthetic(double j, double g, double t_lo, double t_hi, int n) {
  const auto p = DimerParameters::from_j(j, g);
  MeasurementSeries s;
  s.kind = dimer::SeriesKind::susceptibility;
  s.units = "emu/mol";
  for (int i = 0; i < n; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (n - 1);
    s.rows.push_back({t, dimer::susceptibility(p, t).chi, std::nullopt});
  }
  return s;
}

}  // namespace

TEST_CASE("noiseless acetate data are recovered exactly") {
  const auto s = synthetic(-204.0, 2.13, 90.0, 400.0, 32);
  const auto fit = dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-150.0, 2.0));
  CHECK(fit.converged);
  CHECK(fit.j_over_kb == doctest::Approx(-204.0).epsilon(1e-6));
  CHECK(fit.g_factor == doctest::Approx(2.13).epsilon(1e-6));
  CHECK(fit.residual_norm < 1e-10);
  CHECK(fit.residual_norm >= 0.0);
  CHECK(fit.evaluations <= 10000);
}

TEST_CASE("noisy acetate data stay within 2 percent") {
  auto s = synthetic(-204.0, 2.13, 90.0, 400.0, 32);
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (auto& row : s.rows) row.value *= 1.0 + noise(rng);
  const auto fit = dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-150.0, 2.0));
  CHECK(fit.converged);
  CHECK(std::abs(fit.j_over_kb / -204.0 - 1.0) < 0.02);
  CHECK(std::abs(fit.g_factor / 2.13 - 1.0) < 0.02);
}

TEST_CASE("copper nitrate and ferromagnetic data") {
  const auto nitrate = dimer::fit_bleaney_bowers(synthetic(-2.56, 2.11, 1.0, 20.0, 40),
                                                 DimerParameters::from_j(-1.0, 2.0));
  CHECK(nitrate.converged);
  CHECK(nitrate.j_over_kb == doctest::Approx(-2.56).epsilon(1e-6));
  CHECK(nitrate.g_factor == doctest::Approx(2.11).epsilon(1e-6));
  // Quoted as -J/2k_B = 1.28 K.
  CHECK(-nitrate.j_over_kb / 2 == doctest::Approx(1.28).epsilon(1e-6));

  const auto ferro = dimer::fit_bleaney_bowers(synthetic(35.4, 2.13, 5.0, 300.0, 60),
                                               DimerParameters::from_j(20.0, 2.0));
  CHECK(ferro.converged);
  CHECK(ferro.j_over_kb == doctest::Approx(35.4).epsilon(1e-6));
  CHECK(ferro.g_factor == doctest::Approx(2.13).epsilon(1e-6));
}

TEST_CASE("weighted fit") {
  auto s = synthetic(-204.0, 2.13, 90.0, 400.0, 32);
  for (auto& row : s.rows) row.sigma = 1e-3 * row.value;
  const auto fit = dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-150.0, 2.0));
  CHECK(fit.converged);
  CHECK(fit.j_over_kb == doctest::Approx(-204.0).epsilon(1e-6));
  s.rows[3].sigma = 0.0;
  CHECK_THROWS_AS(dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-150.0, 2.0)), dimer::DataError);
}

TEST_CASE("objective is invariant under row reordering") {
  auto s = synthetic(-204.0, 2.13, 90.0, 400.0, 32);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (auto& row : s.rows) row.value *= 1.0 + noise(rng);
  const double before = dimer::bleaney_bowers_objective(s, -200.0, 2.1);
  auto shuffled = s;
  std::shuffle(shuffled.rows.begin(), shuffled.rows.end(), rng);
  CHECK(dimer::bleaney_bowers_objective(shuffled, -200.0, 2.1) == doctest::Approx(before).epsilon(1e-14));
  std::reverse(shuffled.rows.begin(), shuffled.rows.end());
  const auto a = dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-150.0, 2.0));
  const auto b = dimer::fit_bleaney_bowers(shuffled, DimerParameters::from_j(-150.0, 2.0));
  CHECK(a.j_over_kb == doctest::Approx(b.j_over_kb).epsilon(1e-8));
  CHECK(a.g_factor == doctest::Approx(b.g_factor).epsilon(1e-8));
}

TEST_CASE("degenerate data") {
  MeasurementSeries s;
  s.kind = dimer::SeriesKind::susceptibility;
  s.rows = {{10.0, 0.1, std::nullopt}, {10.0, 0.1, std::nullopt}, {10.0, 0.1, std::nullopt}};
  CHECK_THROWS_AS(dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-1.0, 2.0)), dimer::DataError);
  s.rows.resize(2);
  CHECK_THROWS_AS(dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-1.0, 2.0)), dimer::DataError);
  s = synthetic(-2.0, 2.0, 1.0, 5.0, 5);
  s.rows[0].t = -1.0;
  CHECK_THROWS_AS(dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-1.0, 2.0)), dimer::DataError);
  s = synthetic(-2.0, 2.0, 1.0, 5.0, 5);
  s.kind = dimer::SeriesKind::specific_heat;
  CHECK_THROWS_AS(dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-1.0, 2.0)), dimer::DataError);
}

TEST_CASE("evaluation budget exhausted reports best-so-far") {
  auto s = synthetic(-204.0, 2.13, 90.0, 400.0, 32);
  dimer::FitOptions options;
  options.max_evaluations = 2;
  const auto fit = dimer::fit_bleaney_bowers(s, DimerParameters::from_j(-150.0, 2.0), options);
  CHECK_FALSE(fit.converged);
  CHECK(fit.g_factor > 0.0);
  CHECK(fit.j_over_kb < 0.0);
}
