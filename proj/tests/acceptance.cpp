// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dimer_discord/core.hpp"
#include "dimer_discord/dataio.hpp"
#include "dimer_discord/landmarks.hpp"
#include "dimer_discord/numerics.hpp"
#include "dimer_discord/thermo.hpp"

using namespace dimer;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void near(const std::string& what, double got, double want, double tol) {
    std::ostringstream s;
    s.precision(8);
    s << what << " = " << got << " (want " << want << " +- " << tol << ")";
    record(std::abs(got - want) <= tol, s.str());
  }

  void check(const std::string& what, bool ok) { record(ok, what); }

  void run(const std::function<void(Criterion&)>& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      record(false, std::string("exception: ") + e.what());
    }
  }

  bool report(int id) const {
    std::cout << (failures_.empty() ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << title_ << " (" << checks_
              << " checks)\n";
    for (const auto& f : failures_) std::cout << "         failed: " << f << '\n';
    for (const auto& d : details_) std::cout << "         " << d << '\n';
    return failures_.empty();
  }

 private:
  void record(bool ok, const std::string& text) {
    ++checks_;
    if (!ok) {
      failures_.push_back(text);
    } else if (details_.size() < 20) {
      details_.push_back(text);
    }
  }

  std::string title_;
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> details_;
};

Correlator<double> G(double g) { return Correlator<double>::from(g); }

std::vector<double> open_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(lo + (hi - lo) * i / (n + 1));
  return out;
}

double landmark(const std::vector<Landmark>& all, const std::string& name) {
  for (const auto& l : all)
    if (l.name == name) return l.reduced;
  throw std::runtime_error("missing landmark " + name);
}

void landmark_constants(Criterion& c) {
  const auto af = compute_landmarks(DimerParameters::from_j(-1.0));
  const auto fm = compute_landmarks(DimerParameters::from_j(1.0));
  c.near("T_e k_B/|J|", landmark(af, "T_e"), 1.8204, 1e-3);
  c.near("T_QE k_B/|J|", landmark(af, "T_QE"), 0.5880, 1e-3);
  c.near("Q(T_QE) = E(T_QE)", landmark(af, "Q_at_T_QE"), 0.7462, 1e-3);
  c.near("T_CE k_B/|J|", landmark(af, "T_CE"), 0.9260, 1e-3);
  c.near("C(T_CE) = E(T_CE)", landmark(af, "C_at_T_CE"), 0.3390, 1e-3);
  c.near("I_e", landmark(af, "I_e"), 0.2075, 1e-3);
  c.near("Q_e", landmark(af, "Q_e"), 0.1259, 1e-3);
  c.near("Q_0", landmark(fm, "Q_0"), 1.0 / 3.0, 1e-3);
  c.near("C_0", landmark(fm, "C_0"), 0.0817, 1e-3);
  c.near("Q_0/C_0", landmark(fm, "Q_0_over_C_0"), 4.0798, 1e-3);
}

void thermodynamic_maxima(Criterion& c) {
  const auto fm = schottky_maximum(DimerParameters::from_j(1.0));
  c.near("ferro Schottky T_max", fm.reduced_t, 0.9259, 1e-3);
  c.near("ferro Schottky c_m/R", fm.cm_max, 0.1663, 1e-3);
  const auto af = schottky_maximum(DimerParameters::from_j(-1.0));
  c.near("antiferro Schottky T_max", af.reduced_t, 0.7029, 1e-3);
  c.near("antiferro Schottky c_m/R", af.cm_max, 1.0234, 1e-3);

  const auto chi = susceptibility_maximum(DimerParameters::from_j(-1.0));
  c.near("Lambert-W chi T_max", chi.reduced_t, 1.2472, 1e-3);
  c.near("Lambert-W chi_max", chi.reduced_chi, 0.2011, 1e-3);
  const auto p = DimerParameters::from_j(-1.0);
  const auto numeric = maximize_scalar(
      [&](double t) { return (1.0 + correlator_from_temperature(p, t).value()) / (2.0 * t); }, 0.5, 3.0);
  c.near("numeric chi T_max vs Lambert W", numeric.x, chi.reduced_t, 1e-6);
  c.near("numeric chi_max vs Lambert W", numeric.value, chi.reduced_chi, 1e-6);
}

void copper_nitrate(Criterion& c) {
  const auto q_of = [](double g) { return discord(Correlator<double>::from(g)); };

  const auto g_n = parse_parenthesized("-0.54(9)");
  const auto neutron = make_result_record(4.0, g_n, Channel::neutron);
  c.near("neutron Q", neutron.discord.value, 0.30, 0.005);
  c.near("neutron sigma_Q", neutron.discord.sigma, 0.09, 0.005);

  const auto nitrate = preset("copper-nitrate-calorimetric").parameters();
  const double u0 = internal_energy(nitrate, Correlator<double>::ground_state(nitrate.coupling())).u_over_r;
  c.near("u(0)/R", u0, -3.885, 1e-9);
  MeasurementSeries none;
  none.kind = SeriesKind::specific_heat;
  const double tail = integrate_series_with_tail(none, {6.6, 4.0}).value;
  const auto g_int = correlator_from_internal_energy(nitrate, MolarEnergy<double>{-tail});
  c.near("calorimetric integrate Q", q_of(g_int.value()), 0.19, 0.01);

  const auto g_inv = correlator_from_specific_heat(SpecificHeat<double>{0.4125}, nitrate, 4.0);
  c.near("calorimetric invert G", g_inv.value(), -0.398, 0.002);
  c.near("calorimetric invert Q", q_of(g_inv.value()), 0.18, 0.01);

  const auto g_chi = correlator_from_susceptibility(Susceptibility<double>{0.126, 4.0}, 2.11);
  c.near("magnetometric G", g_chi.value(), -0.3965, 0.001);
  c.near("magnetometric Q", q_of(g_chi.value()), 0.17, 0.01);
}

void acetates(Criterion& c) {
  const auto hydrate = preset("copper-acetate-hydrate").parameters();
  const auto anhydrous = preset("copper-acetate-anhydrous").parameters();
  c.near("hydrate T_e (K)", entanglement_death_temperature(hydrate), 371.4, 0.5);
  c.near("anhydrous T_e (K)", entanglement_death_temperature(anhydrous), 393.2, 0.5);

  for (const auto& [name, params, want] :
       {std::tuple{"hydrate", hydrate, 120.0}, std::tuple{"anhydrous", anhydrous, 127.0}}) {
    const auto q = [&](double t) { return correlation_set(params, t).discord; };
    const auto e = [&](double t) { return correlation_set(params, t).entanglement; };
    const auto crossing = find_crossing(q, e, 50.0, 250.0);
    c.near(std::string(name) + " Q = E crossing (K)", crossing.t, want, 1.0);
    c.check(std::string(name) + " Q > E above the crossing", q(crossing.t + 5.0) > e(crossing.t + 5.0));
  }
  const double q400 = correlation_set(hydrate, 400.0).discord;
  c.near("hydrate Q(400 K)", q400, 0.108, 0.005);
  c.check("hydrate Q(400 K) inside the 11-12% band", q400 >= 0.105 && q400 <= 0.12);
}

void ferro_complex(Criterion& c) {
  const auto ferro = preset("cu2l-oac-ferro").parameters();
  const double t = 300.0;
  const auto g = correlator_from_susceptibility(Susceptibility<double>{0.89 / t, t}, ferro.g());
  c.near("Q from chi T = 0.89 at 300 K", discord(g), 0.003, 0.001);

  bool all_zero = true;
  for (int i = 0; i < 2000; ++i) {
    const double tt = 0.1 * std::pow(1e4, i / 1999.0);
    const auto set = correlation_set(ferro, tt);
    all_zero = all_zero && set.concurrence == 0.0 && set.entanglement == 0.0;
  }
  c.check("concurrence and E are zero on 0.1-1000 K (2000 points)", all_zero);
}

void property_suites(Criterion& c) {
  const auto grid = open_grid(-1.0, 1.0 / 3.0, 2000);
  double worst_identity = 0.0, worst_oracle = 0.0;
  bool q_above_c = true, ppt_matches = true;
  for (double g : grid) {
    const auto set = correlation_set(G(g));
    worst_identity = std::max(worst_identity, std::abs(set.mutual_information - (set.discord + set.classical)));
    if (g != 0.0) q_above_c = q_above_c && set.discord > set.classical;
    ppt_matches = ppt_matches && ((ppt_eigenvalues(G(g)).minCoeff() < 0) == (set.concurrence > 0));

    const Eigen::Matrix4d rho = density_matrix(G(g));
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(rho);
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double p = solver.eigenvalues()(k);
      if (p > 1e-300) s -= p * std::log2(p);
    }
    // Both marginals are maximally mixed: S(rho_1) = S(rho_2) = 1 bit.
    worst_oracle = std::max(worst_oracle, std::abs(set.mutual_information - (2.0 - s)));
  }
  c.check("I = Q + C to 1e-12 (max deviation " + format_number(worst_identity, 3) + ")", worst_identity <= 1e-12);
  c.check("Q > C for G != 0 on 2000 points", q_above_c);
  c.check("PPT negativity <=> concurrence > 0 on 2000 points", ppt_matches);
  c.check("I matches the eigen-decomposition entropy oracle to 1e-10", worst_oracle <= 1e-10);

  double worst_cm = 0.0;
  const double af_split = specific_heat_peak(Coupling::antiferromagnetic).x;
  const double f_split = specific_heat_peak(Coupling::ferromagnetic).x;
  const std::array<std::tuple<Coupling, Branch, double, double>, 4> branches{{
      {Coupling::antiferromagnetic, Branch::hot, af_split, 0.0},
      {Coupling::antiferromagnetic, Branch::cold, -1.0, af_split},
      {Coupling::ferromagnetic, Branch::hot, 0.0, f_split},
      {Coupling::ferromagnetic, Branch::cold, f_split, 1.0 / 3.0},
  }};
  for (const auto& [coupling, branch, lo, hi] : branches) {
    const double margin = 0.02 * (hi - lo);
    for (double g : open_grid(lo + margin, hi - margin, 1000)) {
      const auto back = correlator_from_specific_heat(specific_heat_from_correlator(G(g)), coupling, branch);
      worst_cm = std::max(worst_cm, std::abs(back.value() - g));
    }
  }
  c.check("G <-> c_m round trip per branch to 1e-8 (max " + format_number(worst_cm, 3) + ")", worst_cm <= 1e-8);

  double worst_chi = 0.0;
  for (double j : {-1.0, 1.0}) {
    const auto p = DimerParameters::from_j(j, 2.1);
    for (double g : open_grid(j < 0 ? -1.0 : 0.0, j < 0 ? 0.0 : 1.0 / 3.0, 1000)) {
      const double t = -2.0 * j / std::log((1.0 - 3.0 * g) / (1.0 + g));
      worst_chi = std::max(worst_chi, std::abs(correlator_from_susceptibility(susceptibility(p, t), 2.1).value() - g));
    }
  }
  c.check("G <-> chi round trip to 1e-8 (max " + format_number(worst_chi, 3) + ")", worst_chi <= 1e-8);

  const auto truth = DimerParameters::from_j(-204.0, 2.13);
  MeasurementSeries chi;
  chi.kind = SeriesKind::susceptibility;
  for (int i = 0; i < 32; ++i) {
    const double t = 90.0 + 310.0 * i / 31.0;
    chi.rows.push_back({t, susceptibility(truth, t).chi, std::nullopt});
  }
  const auto fit = fit_bleaney_bowers(chi, DimerParameters::from_j(-150.0, 2.0));
  c.check("noiseless fit recovers J to 1e-6 relative", std::abs(fit.j_over_kb / -204.0 - 1.0) <= 1e-6);
  c.check("noiseless fit recovers g to 1e-6 relative", std::abs(fit.g_factor / 2.13 - 1.0) <= 1e-6);

  double worst_w = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = std::pow(10.0, -6.0 + 9.0 * i / 999.0);
    const double w = lambert_w(x);
    worst_w = std::max(worst_w, std::abs(w * std::exp(w) - x) / x);
  }
  c.check("Lambert W residual <= 1e-12 on 1000 points (max " + format_number(worst_w, 3) + ")", worst_w <= 1e-12);

  // Trapezoid error against the closed form of int_0^5 c_m dT = u(5) - u(0).
  const auto p = DimerParameters::from_j(-1.0);
  const double exact = internal_energy(p, correlator_from_temperature(p, 5.0)).u_over_r -
                       internal_energy(p, Correlator<double>::ground_state(p.coupling())).u_over_r;
  double previous = 0.0;
  bool second_order = true;
  for (int n : {100, 200, 400, 800}) {
    MeasurementSeries s;
    s.kind = SeriesKind::specific_heat;
    for (int k = 1; k <= n; ++k) s.rows.push_back({5.0 * k / n, specific_heat(p, 5.0 * k / n).cm_over_r, std::nullopt});
    const double error = std::abs(integrate_series_with_tail(s, {0.0, 5.0}).value - exact);
    if (previous > 0) second_order = second_order && previous / error >= 3.5;
    previous = error;
  }
  c.check("trapezoid error falls >= 3.5x per grid halving", second_order);
}

struct Invocation {
  int exit_code = -1;
  std::string out;
};

Invocation invoke(const std::string& args) {
  const std::string command = std::string(DIMER_DISCORD_CLI_PATH) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("cannot run " + command);
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void cli_determinism(Criterion& c) {
  const std::vector<std::string> commands = {
      "theory --J-over-kB=-1 --t-min 0.01 --t-max 5 --n-points 500",
      "theory --preset cu2l-oac-ferro --t-min 1 --t-max 300 --format json",
      "landmarks --preset copper-acetate-hydrate",
      "from-neutron '--G=-0.54(9)' --t 4",
      "from-chi --preset copper-nitrate-magnetometric --t 4 --chi 0.126",
      "from-cm --preset copper-nitrate-calorimetric --route invert --t 4 --cm 0.4125",
      "from-cm --preset copper-nitrate-calorimetric --route integrate --tail-a 6.6 --tail-from 4 --u0=-3.885",
      "figure --id 5",
  };
  for (const auto& args : commands) {
    const auto a = invoke(args);
    const auto b = invoke(args);
    c.check("byte-identical: " + args, a.exit_code == 0 && !a.out.empty() && a.out == b.out);
  }
  c.check("exit 0 on success", invoke("theory --J-over-kB=-1 --t=1").exit_code == 0);
  c.check("exit 1 on computation failure (G outside physical range)",
          invoke("from-neutron '--G=0.5(1)'").exit_code == 1);
  c.check("exit 1 on computation failure (c_m above the Schottky peak)",
          invoke("from-cm --J-over-kB=-2.59 --route invert --t 4 --cm 1.5").exit_code == 1);
  c.check("exit 2 on usage error (unknown subcommand)", invoke("bogus").exit_code == 2);
  c.check("exit 2 on usage error (preset and explicit J)",
          invoke("theory --preset cu2l-oac-ferro --J-over-kB=1 --t=1").exit_code == 2);
  c.check("exit 2 on usage error (empty temperature range)",
          invoke("theory --J-over-kB=-1 --t-min 5 --t-max 1").exit_code == 2);
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    void (*body)(Criterion&);
  };
  const Entry entries[] = {
      {"landmark constants", landmark_constants},
      {"thermodynamic maxima", thermodynamic_maxima},
      {"copper nitrate at 4 K, three channels", copper_nitrate},
      {"copper acetate case study", acetates},
      {"ferromagnetic complex", ferro_complex},
      {"property suites", property_suites},
      {"CLI determinism and exit codes", cli_determinism},
  };
  int failed = 0;
  int id = 1;
  for (const auto& e : entries) {
    Criterion c(e.title);
    c.run(e.body);
    if (!c.report(id++)) ++failed;
  }
  std::cout << (failed == 0 ? "acceptance: all criteria passed\n" : "acceptance: " + std::to_string(failed) +
                                                                           " criteria failed\n");
  return failed == 0 ? 0 : 1;
}
