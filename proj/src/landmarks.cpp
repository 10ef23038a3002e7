#include "dimer_discord/landmarks.hpp"

#include <cmath>
#include <limits>

#include "dimer_discord/core.hpp"
#include "dimer_discord/thermo.hpp"

namespace dimer {

namespace {

Crossing<double> entanglement_crossing(const DimerParameters& params, double lo, double hi, bool with_discord) {
  params.validate();
  if (!params.antiferro()) throw DomainError("ferromagnetic dimer: no entanglement at any T");
  auto measure = [&params, with_discord](double t) {
    const auto set = correlation_set(params, t);
    return with_discord ? set.discord : set.classical;
  };
  auto entanglement = [&params](double t) { return correlation_set(params, t).entanglement; };
  const double scale = std::abs(params.j_over_kb);
  return find_crossing(measure, entanglement, lo * scale, hi * scale, 1e-13 * scale);
}

}  // namespace

Crossing<double> discord_entanglement_crossing(const DimerParameters& params) {
  return entanglement_crossing(params, 0.3, 0.8, true);
}

Crossing<double> classical_entanglement_crossing(const DimerParameters& params) {
  return entanglement_crossing(params, 0.7, 1.2, false);
}

std::vector<Landmark> compute_landmarks(const DimerParameters& params) {
  params.validate();
  const double abs_j = std::abs(params.j_over_kb);
  std::vector<Landmark> out;
  auto temperature = [&](std::string name, double t_kelvin) {
    out.push_back({std::move(name), t_kelvin / abs_j, t_kelvin, "K"});
  };
  auto bits = [&](std::string name, double v) { out.push_back({std::move(name), v, v, "bit/dimer"}); };

  const auto ground = Correlator<double>::ground_state(params.coupling());
  if (params.antiferro()) {
    const double t_e = entanglement_death_temperature(params);
    temperature("T_e", t_e);
    const auto edge = correlator_from_temperature(params, t_e);
    bits("I_e", mutual_information(edge));
    bits("Q_e", discord(edge));

    const auto qe = discord_entanglement_crossing(params);
    temperature("T_QE", qe.t);
    bits("Q_at_T_QE", qe.value);
    const auto ce = classical_entanglement_crossing(params);
    temperature("T_CE", ce.t);
    bits("C_at_T_CE", ce.value);
    bits("Q_at_T_CE", correlation_set(params, ce.t).discord);
  } else {
    const double q0 = discord(ground);
    const double c0 = classical_correlation(ground);
    bits("Q_0", q0);
    bits("C_0", c0);
    out.push_back({"Q_0_over_C_0", q0 / c0, q0 / c0, "1"});
  }

  const auto u0 = internal_energy(params, ground);
  out.push_back({"u_0_over_R", u0.u_over_r / abs_j, u0.u_over_r, "K"});

  const auto schottky = schottky_maximum(params);
  temperature("T_cm_max", schottky.t_max);
  out.push_back({"cm_max_over_R", schottky.cm_max, schottky.cm_max, "1"});

  if (params.antiferro()) {
    const auto chi = susceptibility_maximum(params);
    temperature("T_chi_max", chi.t_max);
    out.push_back({"chi_max", chi.reduced_chi, chi.chi_max.value_or(std::numeric_limits<double>::quiet_NaN()),
                   "emu/mol"});
  }
  return out;
}

}  // namespace dimer
