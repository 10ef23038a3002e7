#include "dimer_discord/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimer_discord/core.hpp"
#include "dimer_discord/dataio.hpp"
#include "dimer_discord/landmarks.hpp"
#include "dimer_discord/numerics.hpp"
#include "dimer_discord/thermo.hpp"

namespace dimer::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int output_precision() {
  const char* env = std::getenv("DIMER_DISCORD_PRECISION");
  if (env == nullptr || *env == '\0') return 6;
  const int digits = std::atoi(env);
  return std::clamp(digits, 1, 17);
}

struct ParamOptions {
  std::string preset;
  std::optional<double> j;
  std::optional<double> two_j;
  std::optional<double> g;
};

void add_param_options(CLI::App* sub, ParamOptions& p) {
  auto* preset = sub->add_option("--preset", p.preset, "Material preset name");
  auto* j = sub->add_option("--J-over-kB", p.j, "Exchange coupling J/k_B in K (negative: antiferromagnetic)");
  auto* two_j = sub->add_option("--2J-over-kB", p.two_j, "Exchange coupling quoted as 2J/k_B in K");
  auto* g = sub->add_option("--g", p.g, "Lande g-factor (per dimer powder average)");
  preset->excludes(j)->excludes(two_j)->excludes(g);
  j->excludes(two_j);
}

struct Resolved {
  DimerParameters params;
  std::optional<std::string> preset;
};

std::optional<Resolved> resolve_params(const ParamOptions& o) {
  if (!o.preset.empty()) {
    try {
      const MaterialPreset& p = preset(o.preset);
      return Resolved{p.parameters(), p.name};
    } catch (const DataError& e) {
      throw UsageError(e.what());
    }
  }
  if (!o.j && !o.two_j) {
    if (o.g) throw UsageError("--g needs --J-over-kB or --2J-over-kB");
    return std::nullopt;
  }
  try {
    return Resolved{o.j ? DimerParameters::from_j(*o.j, o.g) : DimerParameters::from_two_j(*o.two_j, o.g),
                    std::nullopt};
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

Resolved require_params(const ParamOptions& o) {
  auto r = resolve_params(o);
  if (!r) throw UsageError("a coupling is required: --preset, --J-over-kB or --2J-over-kB");
  return *r;
}

double require_g(const Resolved& r) {
  if (!r.params.g_factor) throw UsageError("a g-factor is required: --g or a preset that carries one");
  return r.params.g();
}

Normalization normalization_from(const std::string& per) {
  return per == "monomer" ? Normalization::per_monomer : Normalization::per_dimer;
}

void add_format_option(CLI::App* sub, std::string& format) {
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

void add_per_option(CLI::App* sub, std::string& per) {
  sub->add_option("--per", per, "Normalization of extensive input values")
      ->check(CLI::IsMember({"dimer", "monomer"}))
      ->capture_default_str();
}

std::vector<double> make_grid(double lo, double hi, int n, bool logarithmic) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    grid[static_cast<std::size_t>(i)] =
        logarithmic ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void emit_table(std::ostream& out, const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                const std::string& format, const nlohmann::ordered_json& meta, int precision) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["meta"] = meta;
    doc["meta"]["columns"] = columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      auto line = nlohmann::ordered_json::array();
      for (double v : row) {
        if (std::isfinite(v))
          line.push_back(std::strtod(format_number(v, precision).c_str(), nullptr));
        else
          line.push_back(nullptr);
      }
      doc["rows"].push_back(line);
    }
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i], precision);
    out << '\n';
  }
}

// theory

struct TheoryOptions {
  ParamOptions params;
  std::optional<double> t_min, t_max;
  int n_points = 400;
  std::string grid = "log";
  std::vector<double> temperatures;
  std::string format = "csv";
};

int cmd_theory(const TheoryOptions& o, std::ostream& out) {
  const Resolved r = require_params(o.params);
  std::vector<double> ts = o.temperatures;
  if (ts.empty()) {
    if (!o.t_min || !o.t_max) throw UsageError("give --t-min and --t-max, or explicit --t values");
    if (!(*o.t_min > 0 && *o.t_min < *o.t_max)) throw UsageError("need 0 < t-min < t-max");
    if (o.n_points < 2) throw UsageError("--n-points must be at least 2");
    ts = make_grid(*o.t_min, *o.t_max, o.n_points, o.grid == "log");
  } else {
    for (double t : ts)
      if (!(t > 0)) throw UsageError("temperatures must be positive");
  }
  std::vector<ResultRecord> records;
  records.reserve(ts.size());
  for (double t : ts) {
    const auto c = correlator_from_temperature(r.params, t);
    const auto set = correlation_set(r.params, t);
    ResultRecord rec;
    rec.t = t;
    rec.correlator = {c.value(), 0.0};
    rec.discord = {set.discord, 0.0};
    rec.classical = set.classical;
    rec.mutual_information = set.mutual_information;
    rec.entanglement = set.entanglement;
    rec.channel = Channel::theory;
    records.push_back(rec);
  }
  out << write_results(records, output_format_from_string(o.format), {r.preset}, output_precision());
  return kSuccess;
}

// landmarks

struct LandmarkOptions {
  ParamOptions params;
  std::string format = "csv";
};

int cmd_landmarks(const LandmarkOptions& o, std::ostream& out) {
  const Resolved r = require_params(o.params);
  const auto landmarks = compute_landmarks(r.params);
  const int precision = output_precision();
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["meta"]["J_over_kB"] = r.params.j_over_kb;
    doc["meta"]["coupling"] = to_string(r.params.coupling());
    doc["meta"]["preset"] = r.preset ? nlohmann::ordered_json(*r.preset) : nlohmann::ordered_json(nullptr);
    doc["landmarks"] = nlohmann::ordered_json::array();
    for (const auto& l : landmarks) {
      auto num = [precision](double v) -> nlohmann::ordered_json {
        if (!std::isfinite(v)) return nullptr;
        return std::strtod(format_number(v, precision).c_str(), nullptr);
      };
      doc["landmarks"].push_back({{"quantity", l.name}, {"reduced", num(l.reduced)}, {"value", num(l.value)},
                                  {"unit", l.unit}});
    }
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "quantity,reduced,value,unit\n";
  for (const auto& l : landmarks)
    out << l.name << ',' << format_number(l.reduced, precision) << ',' << format_number(l.value, precision) << ','
        << l.unit << '\n';
  return kSuccess;
}

// from-chi

struct ChiOptions {
  ParamOptions params;
  std::string input;
  std::optional<double> t, chi, chi_t, sigma_chi;
  std::string per = "dimer";
  std::string format = "csv";
};

int cmd_from_chi(const ChiOptions& o, std::ostream& out, std::ostream& err) {
  const Resolved r = require_params(o.params);
  const double g = require_g(r);
  const Normalization norm = normalization_from(o.per);

  MeasurementSeries series;
  if (!o.input.empty()) {
    if (o.t || o.chi || o.chi_t) throw UsageError("--input excludes --t/--chi/--chi-T");
    series = load_series(o.input, SeriesKind::susceptibility, "emu_per_mol", norm);
  } else {
    if (!o.t || (!o.chi && !o.chi_t)) throw UsageError("give --input, or --t with --chi or --chi-T");
    if (!(*o.t > 0)) throw UsageError("temperature must be positive");
    const double scale = norm == Normalization::per_monomer ? 2.0 : 1.0;
    const double chi = o.chi ? *o.chi : *o.chi_t / *o.t;
    SeriesRow row{*o.t, chi * scale, std::nullopt};
    if (o.sigma_chi) row.sigma = *o.sigma_chi * scale;
    series.rows.push_back(row);
  }
  if (series.empty()) {
    err << "from-chi: no data rows\n";
    return kComputationFailure;
  }

  std::vector<ResultRecord> records;
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    const SeriesRow& row = series.rows[i];
    try {
      const auto c = correlator_from_susceptibility(Susceptibility<double>{row.value, row.t}, g);
      // G is linear in chi: dG/dchi = 2T / (N_A g^2 mu_B^2 / k_B).
      const double sigma_g = row.sigma ? *row.sigma * 2.0 * row.t / (constants::kCuriePrefactor * g * g) : 0.0;
      records.push_back(make_result_record(row.t, {c.value(), sigma_g}, Channel::magnetometric));
    } catch (const Error& e) {
      err << "row " << i << ": " << e.what() << '\n';
    }
  }
  out << write_results(records, output_format_from_string(o.format), {r.preset}, output_precision());
  return records.empty() ? kComputationFailure : kSuccess;
}

// from-cm

struct CmOptions {
  ParamOptions params;
  std::string route;
  std::string input;
  std::optional<double> t, cm, sigma_cm;
  std::string branch;
  std::optional<double> tail_a, tail_from, at, u0;
  std::string u0_from = "theory";
  std::string u_from = "auto";
  std::string per = "dimer";
  std::string format = "csv";
};

int cmd_from_cm_invert(const CmOptions& o, const Resolved& r, std::ostream& out, std::ostream& err) {
  const Normalization norm = normalization_from(o.per);
  MeasurementSeries series;
  if (!o.input.empty()) {
    if (o.t || o.cm) throw UsageError("--input excludes --t/--cm");
    series = load_series(o.input, SeriesKind::specific_heat, "cm_over_R", norm);
  } else {
    if (!o.t || !o.cm) throw UsageError("invert route needs --t and --cm, or --input");
    if (!(*o.t > 0)) throw UsageError("temperature must be positive");
    const double scale = norm == Normalization::per_monomer ? 2.0 : 1.0;
    SeriesRow row{*o.t, *o.cm * scale, std::nullopt};
    if (o.sigma_cm) row.sigma = *o.sigma_cm * scale;
    series.rows.push_back(row);
  }
  std::optional<Branch> branch;
  if (o.branch == "hot") branch = Branch::hot;
  if (o.branch == "cold") branch = Branch::cold;

  std::vector<ResultRecord> records;
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    const SeriesRow& row = series.rows[i];
    try {
      auto invert = [&](double cm) {
        const SpecificHeat<double> value{cm};
        return branch ? correlator_from_specific_heat(value, r.params.coupling(), branch).value()
                      : correlator_from_specific_heat(value, r.params, row.t).value();
      };
      const double g = invert(row.value);
      const double sigma_g = row.sigma ? propagate_uncertainty(invert, {row.value, *row.sigma}).sigma : 0.0;
      records.push_back(make_result_record(row.t, {g, sigma_g}, Channel::calorimetric));
    } catch (const Error& e) {
      err << "row " << i << ": " << e.what() << '\n';
    }
  }
  out << write_results(records, output_format_from_string(o.format), {r.preset}, output_precision());
  return records.empty() ? kComputationFailure : kSuccess;
}

int cmd_from_cm_integrate(const CmOptions& o, const Resolved& r, std::ostream& out, std::ostream& err) {
  const Normalization norm = normalization_from(o.per);
  const double scale = norm == Normalization::per_monomer ? 2.0 : 1.0;
  MeasurementSeries series;
  series.kind = SeriesKind::specific_heat;
  series.units = "cm_over_R";
  if (!o.input.empty()) series = load_series(o.input, SeriesKind::specific_heat, "cm_over_R", norm);
  if (o.tail_a.has_value() != o.tail_from.has_value())
    throw UsageError("--tail-a and --tail-from must be given together");
  std::optional<TailModel> tail;
  if (o.tail_a) {
    if (!(*o.tail_a >= 0) || !(*o.tail_from > 0)) throw UsageError("tail needs a >= 0 and a positive start");
    tail = TailModel{*o.tail_a * scale, *o.tail_from};
  }
  if (series.empty() && !tail) throw UsageError("integrate route needs --input data and/or a tail");

  double t = 0.0;
  if (o.at) {
    t = *o.at;
  } else if (tail) {
    t = tail->t_start;
  } else {
    t = series.rows.back().t;
  }
  if (!(t > 0)) throw UsageError("evaluation temperature must be positive");

  auto report_clamped = [&err](const IntegrationResult& res) {
    for (auto i : res.clamped_rows) err << "warning: row " << i << ": negative c_m clamped to 0\n";
  };

  // u(0)/R: explicit, from the model ground state, or from the full data integral.
  double u0 = 0.0;
  if (o.u0) {
    u0 = *o.u0;
  } else if (o.u0_from == "data") {
    if (!tail) err << "warning: no high-temperature tail given; u(0) from truncated data is biased\n";
    const auto total = integrate_series_with_tail(series, tail.value_or(TailModel{0.0, series.rows.back().t}));
    report_clamped(total);
    u0 = -total.value;
  } else {
    u0 = internal_energy(r.params, Correlator<double>::ground_state(r.params.coupling())).u_over_r;
  }

  std::optional<double> below, above;
  if (!series.empty() && t <= series.rows.back().t) {
    const auto part = integrate_series_up_to(series, t);
    report_clamped(part);
    below = u0 + part.value;
  }
  if (tail) {
    if (t >= tail->t_start) {
      above = -tail->coefficient / t;
    } else if (!series.empty() && t <= series.rows.back().t) {
      const auto total = integrate_series_with_tail(series, *tail);
      above = -(total.value - integrate_series_up_to(series, t).value);
    }
  }

  std::optional<double> u;
  std::string used;
  if (o.u_from == "below" || (o.u_from == "auto" && below)) {
    u = below;
    used = "u(0) + integral of data from 0 to T";
  } else {
    u = above;
    used = "minus integral of c_m from T to infinity";
  }
  if (!u) {
    err << "from-cm: u(T) at T = " << format_number(t) << " K is not determined by the data for route '" << o.u_from
        << "'\n";
    if (o.u_from == "above" && !tail) err << "warning: no high-temperature tail given\n";
    return kComputationFailure;
  }
  err << "u(" << format_number(t) << " K)/R = " << format_number(*u) << " K (" << used << ")\n";
  if (below && above)
    err << "  below: " << format_number(*below) << " K, above: " << format_number(*above) << " K\n";

  const auto c = correlator_from_internal_energy(r.params, MolarEnergy<double>{*u});
  std::vector<ResultRecord> records{make_result_record(t, {c.value(), 0.0}, Channel::calorimetric)};
  out << write_results(records, output_format_from_string(o.format), {r.preset}, output_precision());
  return kSuccess;
}

int cmd_from_cm(const CmOptions& o, std::ostream& out, std::ostream& err) {
  const Resolved r = require_params(o.params);
  return o.route == "invert" ? cmd_from_cm_invert(o, r, out, err) : cmd_from_cm_integrate(o, r, out, err);
}

// from-neutron

struct NeutronOptions {
  std::vector<std::string> values;
  std::string input;
  std::optional<double> t;
  std::string format = "csv";
};

int cmd_from_neutron(const NeutronOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<double, ValueWithUncertainty>> inputs;
  if (!o.input.empty()) {
    if (!o.values.empty()) throw UsageError("--input excludes --G");
    const auto series = load_series(o.input, SeriesKind::correlator, "dimensionless", Normalization::per_dimer);
    for (const auto& row : series.rows) inputs.push_back({row.t, {row.value, row.sigma.value_or(0.0)}});
  } else {
    if (o.values.empty()) throw UsageError("give --G values or --input");
    for (const auto& text : o.values) {
      try {
        inputs.push_back({o.t.value_or(kNaN), parse_parenthesized(text)});
      } catch (const DataError& e) {
        throw UsageError(e.what());
      }
    }
  }

  std::vector<ResultRecord> records;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    try {
      const auto rec = make_result_record(inputs[i].first, inputs[i].second, Channel::neutron);
      err << "G = " << format_parenthesized(inputs[i].second) << " -> Q = " << format_parenthesized(rec.discord)
          << " bit/dimer\n";
      records.push_back(rec);
    } catch (const Error& e) {
      err << "row " << i << ": " << e.what() << " (physical bounds: -1 <= G <= 1/3)\n";
    }
  }
  out << write_results(records, output_format_from_string(o.format), {}, output_precision());
  return records.size() == inputs.size() ? kSuccess : kComputationFailure;
}

// fit

struct FitOptionsCli {
  ParamOptions params;
  std::string input;
  std::string per = "dimer";
  std::string format = "csv";
};

int cmd_fit(const FitOptionsCli& o, std::ostream& out) {
  Resolved r = require_params(o.params);
  if (!r.params.g_factor) r.params.g_factor = GFactor::isotropic(2.0);
  if (o.input.empty()) throw UsageError("fit needs --input");
  const auto series = load_series(o.input, SeriesKind::susceptibility, "emu_per_mol", normalization_from(o.per));
  if (series.size() < 3) throw UsageError("fit needs at least 3 data points");

  const FitResult fit = fit_bleaney_bowers(series, r.params);
  const DimerParameters fitted = DimerParameters::from_j(fit.j_over_kb, fit.g_factor);
  const int precision = output_precision();

  std::vector<std::vector<double>> rows;
  for (const auto& row : series.rows) {
    const double model = susceptibility(fitted, row.t).chi;
    rows.push_back({row.t, row.value, model, row.value - model});
  }
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    auto num = [precision](double v) { return std::strtod(format_number(v, precision).c_str(), nullptr); };
    doc["fit"] = {{"J_over_kB", num(fit.j_over_kb)},
                  {"2J_over_kB", num(2.0 * fit.j_over_kb)},
                  {"g", num(fit.g_factor)},
                  {"residual_norm", num(fit.residual_norm)},
                  {"iterations", fit.iterations},
                  {"evaluations", fit.evaluations},
                  {"converged", fit.converged}};
    doc["residuals"] = nlohmann::ordered_json::array();
    for (const auto& row : rows)
      doc["residuals"].push_back(
          {{"T_K", num(row[0])}, {"chi_obs", num(row[1])}, {"chi_fit", num(row[2])}, {"residual", num(row[3])}});
    out << doc.dump(2) << '\n';
  } else {
    out << "parameter,value\n"
        << "J_over_kB," << format_number(fit.j_over_kb, precision) << '\n'
        << "2J_over_kB," << format_number(2.0 * fit.j_over_kb, precision) << '\n'
        << "g," << format_number(fit.g_factor, precision) << '\n'
        << "residual_norm," << format_number(fit.residual_norm, precision) << '\n'
        << "iterations," << fit.iterations << '\n'
        << "evaluations," << fit.evaluations << '\n'
        << "converged," << (fit.converged ? "true" : "false") << "\n\n"
        << "T_K,chi_obs,chi_fit,residual\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i], precision);
      out << '\n';
    }
  }
  return fit.converged ? kSuccess : kComputationFailure;
}

// figure

struct FigureOptions {
  int id = 0;
  int n_points = 400;
  std::string format = "csv";
};

int cmd_figure(const FigureOptions& o, std::ostream& out) {
  if (o.n_points < 2) throw UsageError("--n-points must be at least 2");
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::ordered_json meta;
  meta["figure"] = o.id;
  const auto af = DimerParameters::from_j(-1.0);
  const auto fm = DimerParameters::from_j(1.0);

  switch (o.id) {
    case 1:
      meta["J_over_kB"] = -1.0;
      columns = {"kT_over_absJ", "absG", "Q", "C", "E"};
      for (double tau : make_grid(0.01, 5.0, o.n_points, true)) {
        const auto set = correlation_set(af, tau);
        rows.push_back({tau, std::abs(correlator_from_temperature(af, tau).value()), set.discord, set.classical,
                        set.entanglement});
      }
      break;
    case 2:
      meta["J_over_kB"] = 1.0;
      columns = {"kT_over_J", "G", "Q", "C"};
      for (double tau : make_grid(0.01, 5.0, o.n_points, true)) {
        const auto set = correlation_set(fm, tau);
        rows.push_back({tau, correlator_from_temperature(fm, tau).value(), set.discord, set.classical});
      }
      break;
    case 3:
      columns = {"G", "Q"};
      for (double g : make_grid(-1.0, 1.0 / 3.0, o.n_points, false))
        rows.push_back({g, discord(Correlator<double>::from(g))});
      break;
    case 4:
      columns = {"G", "cm_over_R"};
      for (double g : make_grid(-1.0, 1.0 / 3.0, o.n_points, false))
        rows.push_back({g, specific_heat_from_correlator(Correlator<double>::from(g)).cm_over_r});
      break;
    case 5: {
      const auto hydrate = preset("copper-acetate-hydrate").parameters();
      const auto anhydrous = preset("copper-acetate-anhydrous").parameters();
      meta["presets"] = {"copper-acetate-hydrate", "copper-acetate-anhydrous"};
      columns = {"T_K", "Q_hydrate", "Q_anhydrous", "E_hydrate", "E_anhydrous"};
      for (double t : make_grid(10.0, 400.0, o.n_points, true)) {
        const auto h = correlation_set(hydrate, t);
        const auto a = correlation_set(anhydrous, t);
        rows.push_back({t, h.discord, a.discord, h.entanglement, a.entanglement});
      }
      break;
    }
    case 6: {
      const auto ferro = preset("cu2l-oac-ferro").parameters();
      meta["presets"] = {"cu2l-oac-ferro"};
      columns = {"T_K", "Q"};
      for (double t : make_grid(1.0, 300.0, o.n_points, true)) rows.push_back({t, correlation_set(ferro, t).discord});
      break;
    }
    default:
      throw UsageError("unknown figure id " + std::to_string(o.id) + " (expected 1-6)");
  }
  emit_table(out, columns, rows, o.format, meta, output_precision());
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum discord of spin-1/2 Heisenberg dimers from theory and experiment", "dimer_discord"};
  app.require_subcommand(1);

  TheoryOptions theory;
  auto* theory_cmd = app.add_subcommand("theory", "Correlation measures on a temperature grid");
  add_param_options(theory_cmd, theory.params);
  theory_cmd->add_option("--t-min", theory.t_min, "Lowest temperature (K)");
  theory_cmd->add_option("--t-max", theory.t_max, "Highest temperature (K)");
  theory_cmd->add_option("--n-points", theory.n_points, "Grid points")->capture_default_str();
  theory_cmd->add_option("--grid", theory.grid, "Grid spacing")
      ->check(CLI::IsMember({"log", "linear"}))
      ->capture_default_str();
  theory_cmd->add_option("--t", theory.temperatures, "Explicit temperatures (K), instead of a grid");
  add_format_option(theory_cmd, theory.format);

  LandmarkOptions landmarks;
  auto* landmarks_cmd = app.add_subcommand("landmarks", "Characteristic temperatures and correlation values");
  add_param_options(landmarks_cmd, landmarks.params);
  add_format_option(landmarks_cmd, landmarks.format);

  ChiOptions chi;
  auto* chi_cmd = app.add_subcommand("from-chi", "Discord from magnetic susceptibility");
  add_param_options(chi_cmd, chi.params);
  chi_cmd->add_option("--input", chi.input, "Susceptibility CSV (T_K,chi_emu_per_mol[,sigma_chi])");
  chi_cmd->add_option("--t", chi.t, "Temperature of a single point (K)");
  chi_cmd->add_option("--chi", chi.chi, "Susceptibility of a single point (emu/mol)");
  chi_cmd->add_option("--chi-T", chi.chi_t, "chi*T product of a single point (cm^3 K/mol)");
  chi_cmd->add_option("--sigma-chi", chi.sigma_chi, "Uncertainty of --chi (emu/mol)");
  add_per_option(chi_cmd, chi.per);
  add_format_option(chi_cmd, chi.format);

  CmOptions cm;
  auto* cm_cmd = app.add_subcommand("from-cm", "Discord from magnetic specific heat");
  add_param_options(cm_cmd, cm.params);
  cm_cmd->add_option("--route", cm.route, "integrate: u(T) from the c_m integral; invert: solve c_m(G)")
      ->required()
      ->check(CLI::IsMember({"integrate", "invert"}));
  cm_cmd->add_option("--input", cm.input, "Specific-heat CSV (T_K,cm_over_R[,sigma])");
  cm_cmd->add_option("--t", cm.t, "invert: temperature of a single point (K)");
  cm_cmd->add_option("--cm", cm.cm, "invert: c_m/R of a single point");
  cm_cmd->add_option("--sigma-cm", cm.sigma_cm, "invert: uncertainty of --cm");
  cm_cmd->add_option("--branch", cm.branch, "invert: side of the Schottky peak (default: from T)")
      ->check(CLI::IsMember({"hot", "cold"}));
  cm_cmd->add_option("--tail-a", cm.tail_a, "integrate: tail coefficient a in c_m/R = a/T^2 (K^2)");
  cm_cmd->add_option("--tail-from", cm.tail_from, "integrate: temperature where the tail starts (K)");
  cm_cmd->add_option("--at", cm.at, "integrate: evaluation temperature (K)");
  cm_cmd->add_option("--u0", cm.u0, "integrate: u(0)/R in K");
  cm_cmd->add_option("--u0-from", cm.u0_from, "integrate: u(0) source when --u0 is absent")
      ->check(CLI::IsMember({"theory", "data"}))
      ->capture_default_str();
  cm_cmd->add_option("--u-from", cm.u_from, "integrate: below = u0 + int_0^T, above = -int_T^inf")
      ->check(CLI::IsMember({"auto", "below", "above"}))
      ->capture_default_str();
  add_per_option(cm_cmd, cm.per);
  add_format_option(cm_cmd, cm.format);

  NeutronOptions neutron;
  auto* neutron_cmd = app.add_subcommand("from-neutron", "Discord from a measured spin correlator");
  neutron_cmd->add_option("--G", neutron.values, "Correlator with uncertainty digits, e.g. --G=-0.54(9)");
  neutron_cmd->add_option("--input", neutron.input, "Correlator CSV (T_K,G[,sigma_G])");
  neutron_cmd->add_option("--t", neutron.t, "Temperature of the --G values (K)");
  add_format_option(neutron_cmd, neutron.format);

  FitOptionsCli fit;
  auto* fit_cmd = app.add_subcommand("fit", "Least-squares Bleaney-Bowers fit of chi(T)");
  add_param_options(fit_cmd, fit.params);
  fit_cmd->add_option("--input", fit.input, "Susceptibility CSV");
  add_per_option(fit_cmd, fit.per);
  add_format_option(fit_cmd, fit.format);

  FigureOptions figure;
  auto* figure_cmd = app.add_subcommand("figure", "Curve data for the standard plots (ids 1-6)");
  figure_cmd->add_option("--id", figure.id, "Figure id")->required();
  figure_cmd->add_option("--n-points", figure.n_points, "Grid points")->capture_default_str();
  add_format_option(figure_cmd, figure.format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*theory_cmd) return cmd_theory(theory, out);
    if (*landmarks_cmd) return cmd_landmarks(landmarks, out);
    if (*chi_cmd) return cmd_from_chi(chi, out, err);
    if (*cm_cmd) return cmd_from_cm(cm, out, err);
    if (*neutron_cmd) return cmd_from_neutron(neutron, out, err);
    if (*fit_cmd) return cmd_fit(fit, out);
    if (*figure_cmd) return cmd_figure(figure, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kComputationFailure;
  }
  return kUsageError;
}

}  // namespace dimer::cli
