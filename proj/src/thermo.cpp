#include "dimer_discord/thermo.hpp"

#include <cmath>
#include <sstream>

namespace dimer {

Extremum<double> specific_heat_peak(Coupling coupling) {
  auto cm_of_g = [](double g) { return specific_heat_from_correlator(Correlator<double>::from(g)).cm_over_r; };
  static const Extremum<double> antiferro = maximize_scalar(cm_of_g, -1.0, 0.0);
  static const Extremum<double> ferro = maximize_scalar(cm_of_g, 0.0, 1.0 / 3.0);
  return coupling == Coupling::antiferromagnetic ? antiferro : ferro;
}

Correlator<double> correlator_from_specific_heat(SpecificHeat<double> cm, Coupling coupling,
                                                 std::optional<Branch> branch) {
  constexpr double kTolerance = 1e-6;
  if (!branch)
    throw DomainError("c_m/R inversion is two-valued; an explicit hot or cold branch is required");
  double value = cm.cm_over_r;
  if (std::isnan(value) || value < -kTolerance) throw DomainError("specific heat must be non-negative");
  if (value < 0) value = 0;

  const Extremum<double> peak = specific_heat_peak(coupling);
  if (value > peak.value + kTolerance) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "c_m/R = " << value << " exceeds the " << to_string(coupling)
        << " dimer maximum c_m/R = " << peak.value;
    throw NoSolutionError(msg.str());
  }
  if (value >= peak.value) return Correlator<double>::from(peak.x);

  const bool hot = *branch == Branch::hot;
  if (value == 0) return hot ? Correlator<double>::from(0.0) : Correlator<double>::ground_state(coupling);

  double lo = 0, hi = 0;
  if (coupling == Coupling::antiferromagnetic) {
    lo = hot ? peak.x : -1.0;
    hi = hot ? 0.0 : peak.x;
  } else {
    lo = hot ? 0.0 : peak.x;
    hi = hot ? peak.x : 1.0 / 3.0;
  }
  auto residual = [value](double g) {
    return specific_heat_from_correlator(Correlator<double>::from(g)).cm_over_r - value;
  };
  return Correlator<double>::from(find_root(residual, lo, hi, 1e-14));
}

Correlator<double> correlator_from_specific_heat(SpecificHeat<double> cm, const DimerParameters& params,
                                                 double t) {
  if (!(t > 0)) throw DomainError("temperature must be positive");
  const Branch branch = t > schottky_maximum(params).t_max ? Branch::hot : Branch::cold;
  return correlator_from_specific_heat(cm, params.coupling(), branch);
}

SchottkyMaximum schottky_maximum(const DimerParameters& params) {
  params.validate();
  const Coupling coupling = params.coupling();
  const DimerParameters unit = DimerParameters::from_j(coupling == Coupling::antiferromagnetic ? -1.0 : 1.0);
  auto reduced = [&unit](double tau) { return specific_heat(unit, tau).cm_over_r; };
  const Extremum<double> peak = coupling == Coupling::antiferromagnetic ? maximize_scalar(reduced, 0.1, 3.0)
                                                                        : maximize_scalar(reduced, 0.1, 5.0);
  SchottkyMaximum out;
  out.reduced_t = peak.x;
  out.t_max = peak.x * std::abs(params.j_over_kb);
  out.cm_max = peak.value;
  return out;
}

SusceptibilityMaximum susceptibility_maximum(const DimerParameters& params) {
  params.validate();
  if (!params.antiferro())
    throw DomainError("ferromagnetic dimer: susceptibility decreases monotonically, no maximum");
  const double w = lambert_w(3.0 / std::exp(1.0));
  SusceptibilityMaximum out;
  out.reduced_t = 2.0 / (1.0 + w);
  out.reduced_chi = w / 3.0;
  const double abs_j = std::abs(params.j_over_kb);
  out.t_max = out.reduced_t * abs_j;
  if (params.g_factor) {
    const double g = params.g();
    out.chi_max = out.reduced_chi * constants::kCuriePrefactor * g * g / abs_j;
  }
  return out;
}

SeriesConversion specific_heat_from_susceptibility_series(const DimerParameters& params,
                                                          const MeasurementSeries& chi_series) {
  if (chi_series.kind != SeriesKind::susceptibility)
    throw DataError("expected a susceptibility series");
  if (chi_series.normalization != Normalization::per_dimer)
    throw DataError("susceptibility series must be normalized per mole of dimers");
  if (chi_series.empty()) throw DataError("susceptibility series has no points");
  const double g = params.g();

  SeriesConversion out;
  out.series.kind = SeriesKind::specific_heat;
  out.series.units = "cm_over_R";
  out.series.normalization = Normalization::per_dimer;
  for (std::size_t i = 0; i < chi_series.rows.size(); ++i) {
    const SeriesRow& row = chi_series.rows[i];
    auto cm_of_chi = [&](double chi) {
      const auto c = correlator_from_susceptibility(Susceptibility<double>{chi, row.t}, g);
      return specific_heat_from_correlator(c).cm_over_r;
    };
    try {
      SeriesRow converted{row.t, cm_of_chi(row.value), std::nullopt};
      if (row.sigma) converted.sigma = propagate_uncertainty(cm_of_chi, {row.value, *row.sigma}).sigma;
      out.series.rows.push_back(converted);
    } catch (const Error& e) {
      out.errors.push_back({i, e.what()});
    }
  }
  return out;
}

}  // namespace dimer
