#pragma once

// Thermodynamics of the Heisenberg dimer per mole of dimers (CGS-emu) and
// the inversions of each observable back to the correlator G.

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dimer_discord/constants.hpp"
#include "dimer_discord/core.hpp"
#include "dimer_discord/errors.hpp"
#include "dimer_discord/numerics.hpp"
#include "dimer_discord/series.hpp"
#include "dimer_discord/types.hpp"

namespace dimer {

/// Internal energy per mole of dimers divided by R, in kelvin.
template <typename Scalar = double>
struct MolarEnergy {
  Scalar u_over_r{};
};

/// Magnetic specific heat per mole of dimers divided by R.
template <typename Scalar = double>
struct SpecificHeat {
  Scalar cm_over_r{};
};

/// Molar susceptibility (emu per mole of dimers) measured at temperature t.
template <typename Scalar = double>
struct Susceptibility {
  Scalar chi{};
  Scalar t{};
};

/// Which side of the Schottky peak a specific-heat value belongs to.
enum class Branch { hot, cold };

/// u/R = -(3/2) (J/k_B) G.
template <typename Scalar>
MolarEnergy<Scalar> internal_energy(const DimerParameters& params, Correlator<Scalar> c) {
  params.validate();
  return {Scalar(-1.5) * Scalar(params.j_over_kb) * c.value()};
}

template <typename Scalar>
Correlator<Scalar> correlator_from_internal_energy(const DimerParameters& params, MolarEnergy<Scalar> u) {
  params.validate();
  const Scalar g = Scalar(-2) * u.u_over_r / (Scalar(3) * Scalar(params.j_over_kb));
  try {
    return Correlator<Scalar>::from(g);
  } catch (const DomainError&) {
    std::ostringstream msg;
    msg << "internal energy u/R = " << static_cast<double>(u.u_over_r) << " K implies G = "
        << static_cast<double>(g) << ", outside [-1, 1/3]";
    throw InconsistencyError(msg.str());
  }
}

/// c_m/R = 12 (J/k_BT)^2 e^{2J/k_BT} / (1 + 3 e^{2J/k_BT})^2.
template <typename Scalar>
SpecificHeat<Scalar> specific_heat(const DimerParameters& params, Scalar t) {
  using std::exp;
  params.validate();
  if (!(t > 0)) throw DomainError("temperature must be positive");
  const Scalar r = Scalar(params.j_over_kb) / t;
  const Scalar x = Scalar(2) * r;
  Scalar ratio;
  if (x <= Scalar(0)) {
    const Scalar y = exp(x);
    ratio = y / ((Scalar(1) + Scalar(3) * y) * (Scalar(1) + Scalar(3) * y));
  } else {
    const Scalar z = exp(-x);
    ratio = z / ((z + Scalar(3)) * (z + Scalar(3)));
  }
  return {Scalar(12) * r * r * ratio};
}

/// c_m/R = (3/16)(1+G)(1-3G) ln^2[(1+G)/(1-3G)], temperature-free.
template <typename Scalar>
SpecificHeat<Scalar> specific_heat_from_correlator(Correlator<Scalar> c) {
  using std::log1p;
  const Scalar g = c.value();
  const Scalar a = Scalar(1) + g;
  const Scalar b = Scalar(1) - Scalar(3) * g;
  if (a < Scalar(1e-30) || b < Scalar(1e-30)) return {Scalar(0)};
  const Scalar l = log1p(g) - log1p(Scalar(-3) * g);
  return {Scalar(3) / Scalar(16) * a * b * l * l};
}

/// Correlator at the maximum of c_m/R(G) on one side of G = 0, with that maximum.
/// Antiferro: G* = -0.80199, c_m/R = 1.02349. Ferro: G* = 0.28397, c_m/R = 0.16632.
Extremum<double> specific_heat_peak(Coupling coupling);

/// Inverts c_m/R(G) on the requested branch. Hot is the side containing
/// G = 0 (T above the peak), cold the side containing the ground state.
/// The branch must be given; std::nullopt is rejected.
Correlator<double> correlator_from_specific_heat(SpecificHeat<double> cm, Coupling coupling,
                                                 std::optional<Branch> branch);

/// Same, choosing the branch by comparing t with the Schottky peak temperature.
Correlator<double> correlator_from_specific_heat(SpecificHeat<double> cm, const DimerParameters& params,
                                                 double t);

struct SchottkyMaximum {
  double reduced_t = 0.0;  // k_B T_max / |J|
  double t_max = 0.0;      // K
  double cm_max = 0.0;     // c_m/R
};

/// Location and height of the specific-heat maximum, by golden-section search.
SchottkyMaximum schottky_maximum(const DimerParameters& params);

/// Bleaney-Bowers: chi = N_A g^2 mu_B^2 (1 + G) / (2 k_B T), emu per mole of dimers.
template <typename Scalar>
Susceptibility<Scalar> susceptibility(const DimerParameters& params, Scalar t) {
  const Scalar g = Scalar(params.g());
  const auto c = correlator_from_temperature(params, t);
  return {Scalar(constants::kCuriePrefactor) * g * g / (Scalar(2) * t) * (Scalar(1) + c.value()), t};
}

/// Relative tolerance beyond which an implied correlator is reported as a
/// units/normalization problem rather than clamped.
inline constexpr double kSusceptibilityRangeSlack = 1e-2;

/// G = 2 k_B T chi / (N_A g^2 mu_B^2) - 1 = -1 + chi / (2 chi_Curie).
template <typename Scalar>
Correlator<Scalar> correlator_from_susceptibility(Susceptibility<Scalar> chi, double g_factor) {
  if (!(chi.t > 0)) throw DomainError("temperature must be positive");
  if (!(g_factor > 0)) throw DomainError("g-factor must be positive");
  const Scalar g2 = Scalar(g_factor) * Scalar(g_factor);
  const Scalar g = Scalar(2) * chi.t * chi.chi / (Scalar(constants::kCuriePrefactor) * g2) - Scalar(1);
  const Scalar slack(kSusceptibilityRangeSlack);
  if (!(g >= Correlator<Scalar>::lower() - slack && g <= Correlator<Scalar>::upper() + slack)) {
    std::ostringstream msg;
    msg << "susceptibility " << static_cast<double>(chi.chi) << " emu/mol at T = " << static_cast<double>(chi.t)
        << " K implies G = " << static_cast<double>(g)
        << ", outside [-1, 1/3]; check units (emu/mol) and per-dimer normalization";
    throw InconsistencyError(msg.str());
  }
  if (g < Correlator<Scalar>::lower()) return Correlator<Scalar>::from(Correlator<Scalar>::lower());
  if (g > Correlator<Scalar>::upper()) return Correlator<Scalar>::from(Correlator<Scalar>::upper());
  return Correlator<Scalar>::from(g);
}

struct SusceptibilityMaximum {
  double reduced_t = 0.0;    // k_B T_max / |J| = 2 / (1 + W(3/e))
  double reduced_chi = 0.0;  // |J| chi_max / (N_A g^2 mu_B^2) = W(3/e) / 3
  double t_max = 0.0;        // K
  std::optional<double> chi_max;  // emu/mol, when the g-factor is known
};

/// Closed-form maximum of the antiferromagnetic Bleaney-Bowers curve.
SusceptibilityMaximum susceptibility_maximum(const DimerParameters& params);

/// u/R = -3 (J/k_B) (k_B T chi / (N_A g^2 mu_B^2) - 1/2).
template <typename Scalar>
MolarEnergy<Scalar> internal_energy_from_susceptibility(const DimerParameters& params, Susceptibility<Scalar> chi) {
  const double g = params.g();
  (void)correlator_from_susceptibility(chi, g);
  const Scalar reduced = chi.t * chi.chi / (Scalar(constants::kCuriePrefactor) * Scalar(g) * Scalar(g));
  return {Scalar(-3) * Scalar(params.j_over_kb) * (reduced - Scalar(0.5))};
}

struct RowError {
  std::size_t row = 0;
  std::string message;
};

struct SeriesConversion {
  MeasurementSeries series;
  std::vector<RowError> errors;
};

/// chi(T) -> c_m/R(T) pointwise through G, without differentiating chi T.
/// Rows that fail to invert are skipped and listed in errors.
SeriesConversion specific_heat_from_susceptibility_series(const DimerParameters& params,
                                                          const MeasurementSeries& chi_series);

}  // namespace dimer
