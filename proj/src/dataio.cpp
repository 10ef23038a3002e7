#include "dimer_discord/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dimer_discord/constants.hpp"
#include "dimer_discord/core.hpp"
#include "dimer_discord/numerics.hpp"

namespace dimer {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

struct ColumnLayout {
  std::string_view value;
  std::string_view sigma;
};

ColumnLayout column_layout(SeriesKind kind, std::string_view units) {
  switch (kind) {
    case SeriesKind::susceptibility:
      if (units == "emu_per_mol") return {"chi_emu_per_mol", "sigma_chi"};
      break;
    case SeriesKind::specific_heat:
      if (units == "cm_over_R") return {"cm_over_R", "sigma"};
      if (units == "cm_J_per_mol_K") return {"cm_J_per_mol_K", "sigma"};
      break;
    case SeriesKind::correlator:
      if (units == "dimensionless") return {"G", "sigma_G"};
      break;
  }
  throw DataError("unknown unit tag '" + std::string(units) + "' for " + to_string(kind) + " series");
}

[[noreturn]] void fail_at(std::string_view source, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw DataError(msg.str());
}

}  // namespace

std::string_view canonical_units(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::susceptibility: return "emu_per_mol";
    case SeriesKind::specific_heat: return "cm_over_R";
    case SeriesKind::correlator: return "dimensionless";
  }
  return "";
}

MeasurementSeries parse_series(std::istream& in, SeriesKind kind, std::string_view units,
                               Normalization normalization, std::string_view source) {
  const ColumnLayout layout = column_layout(kind, units);
  MeasurementSeries series;
  series.kind = kind;
  series.units = std::string(canonical_units(kind));
  series.normalization = Normalization::per_dimer;

  // chi and c_m are extensive: per mole of dimers is twice per mole of ions.
  const bool extensive = kind != SeriesKind::correlator;
  double scale = (extensive && normalization == Normalization::per_monomer) ? 2.0 : 1.0;
  if (units == "cm_J_per_mol_K") scale /= constants::kGasConstantSI;

  std::string raw;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);

    if (columns == 0) {
      const bool two = fields.size() == 2;
      const bool three = fields.size() == 3 && fields[2] == layout.sigma;
      if (fields.size() < 2 || fields[0] != "T_K" || fields[1] != layout.value || !(two || three)) {
        fail_at(source, line_no,
                "expected header T_K," + std::string(layout.value) + "[," + std::string(layout.sigma) + "]");
      }
      columns = fields.size();
      continue;
    }

    if (fields.size() != columns && !(columns == 3 && fields.size() == 2))
      fail_at(source, line_no, "expected " + std::to_string(columns) + " fields");
    const auto t = parse_double(fields[0]);
    const auto value = parse_double(fields[1]);
    if (!t || !value) fail_at(source, line_no, "malformed number");
    if (!(*t > 0) || !std::isfinite(*t)) fail_at(source, line_no, "temperature must be positive");
    if (!std::isfinite(*value)) fail_at(source, line_no, "value must be finite");
    SeriesRow row{*t, *value * scale, std::nullopt};
    if (fields.size() == 3 && !fields[2].empty()) {
      const auto sigma = parse_double(fields[2]);
      if (!sigma) fail_at(source, line_no, "malformed uncertainty");
      if (!(*sigma >= 0)) fail_at(source, line_no, "uncertainty must be non-negative");
      row.sigma = *sigma * scale;
    }
    series.rows.push_back(row);
  }
  if (columns == 0) fail_at(source, line_no, "missing header line");

  std::stable_sort(series.rows.begin(), series.rows.end(),
                   [](const SeriesRow& a, const SeriesRow& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < series.rows.size(); ++i) {
    if (series.rows[i].t == series.rows[i - 1].t) {
      std::ostringstream msg;
      msg << source << ": duplicate temperature " << series.rows[i].t << " K";
      throw DataError(msg.str());
    }
  }
  return series;
}

MeasurementSeries load_series(const std::filesystem::path& path, SeriesKind kind, std::string_view units,
                              Normalization normalization) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_series(in, kind, units, normalization, path.string());
}

void write_series(std::ostream& out, const MeasurementSeries& series, int precision) {
  if (series.normalization != Normalization::per_dimer)
    throw DataError("only per-dimer series can be written");
  const ColumnLayout layout = column_layout(series.kind, series.units);
  const bool with_sigma =
      std::any_of(series.rows.begin(), series.rows.end(), [](const SeriesRow& r) { return r.sigma.has_value(); });
  out << "T_K," << layout.value;
  if (with_sigma) out << ',' << layout.sigma;
  out << '\n';
  for (const auto& row : series.rows) {
    out << format_number(row.t, precision) << ',' << format_number(row.value, precision);
    if (with_sigma) {
      out << ',';
      if (row.sigma) out << format_number(*row.sigma, precision);
    }
    out << '\n';
  }
}

const std::vector<MaterialPreset>& preset_registry() {
  static const std::vector<MaterialPreset> registry = {
      {"copper-nitrate-calorimetric", -2.59, std::nullopt,
       "Cu(NO3)2.2.5H2O, specific-heat estimate 2J/k_B = -5.18 K"},
      {"copper-nitrate-magnetometric", -2.56, 2.11,
       "Cu(NO3)2.2.5H2O, powder susceptibility fit -J/2k_B = 1.28 K, g = 2.11"},
      {"copper-acetate-hydrate", -204.0, 2.13, "[Cu(CH3COO)2.H2O]2, Bleaney-Bowers fit 2J/k_B = -408 K, g = 2.13"},
      {"copper-acetate-anhydrous", -216.0, 2.17, "[Cu(CH3COO)2]2, Bleaney-Bowers fit 2J/k_B = -432 K, g = 2.17"},
      {"cu2l-oac-ferro", 35.4, 2.13, "[Cu2L(OAc)].6H2O, Bleaney-Bowers fit J/k_B = 35.4 K, g = 2.13"},
  };
  return registry;
}

const MaterialPreset& preset(std::string_view name) {
  const auto& registry = preset_registry();
  const auto it =
      std::find_if(registry.begin(), registry.end(), [name](const MaterialPreset& p) { return p.name == name; });
  if (it != registry.end()) return *it;
  std::string msg = "unknown preset '" + std::string(name) + "'; available:";
  for (const auto& p : registry) msg += " " + p.name;
  throw DataError(msg);
}

ValueWithUncertainty parse_parenthesized(std::string_view text) {
  const std::string original(text);
  text = trim(text);
  bool negative = false;
  if (text.substr(0, 3) == "\xE2\x88\x92") {
    negative = true;
    text.remove_prefix(3);
  } else if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto open = text.find('(');
  const std::string_view number = text.substr(0, open);
  const auto value = parse_double(number);
  if (!value || number.find_first_not_of("0123456789.") != std::string_view::npos)
    throw DataError("malformed value '" + original + "'");

  ValueWithUncertainty out{negative ? -*value : *value, 0.0};
  if (open == std::string_view::npos) return out;
  if (text.back() != ')') throw DataError("malformed uncertainty in '" + original + "'");
  const std::string_view digits = text.substr(open + 1, text.size() - open - 2);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
    throw DataError("malformed uncertainty in '" + original + "'");
  const auto dot = number.find('.');
  const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(number.size() - dot - 1);
  out.sigma = *parse_double(digits) * std::pow(10.0, -decimals);
  return out;
}

std::string format_parenthesized(ValueWithUncertainty v) {
  if (!(v.sigma > 0)) return format_number(v.value, 6) + "(0)";
  int exponent = static_cast<int>(std::floor(std::log10(v.sigma)));
  long digit = std::lround(v.sigma / std::pow(10.0, exponent));
  if (digit >= 10) {
    ++exponent;
    digit = 1;
  }
  const int decimals = std::max(0, -exponent);
  const long shown = exponent > 0 ? digit * static_cast<long>(std::lround(std::pow(10.0, exponent))) : digit;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f(%ld)", decimals, v.value, shown);
  return buffer;
}

const char* to_string(Channel c) {
  switch (c) {
    case Channel::neutron: return "neutron";
    case Channel::calorimetric: return "calorimetric";
    case Channel::magnetometric: return "magnetometric";
    case Channel::theory: return "theory";
  }
  return "unknown";
}

Channel channel_from_string(std::string_view s) {
  for (Channel c : {Channel::neutron, Channel::calorimetric, Channel::magnetometric, Channel::theory})
    if (s == to_string(c)) return c;
  throw DataError("unknown channel '" + std::string(s) + "'");
}

OutputFormat output_format_from_string(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw DataError("unknown output format '" + std::string(s) + "'");
}

ResultRecord make_result_record(double t, ValueWithUncertainty g, Channel channel) {
  const auto c = Correlator<double>::from(g.value);
  const auto set = correlation_set(c);
  ResultRecord record;
  record.t = t;
  record.correlator = {c.value(), g.sigma};
  const auto q = propagate_uncertainty([](double x) { return discord(Correlator<double>::from(x)); },
                                       {c.value(), g.sigma});
  record.discord = {set.discord, q.sigma};
  record.classical = set.classical;
  record.mutual_information = set.mutual_information;
  record.entanglement = set.entanglement;
  record.channel = channel;
  return record;
}

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
  return buffer;
}

namespace {

nlohmann::ordered_json rounded(double value, int precision) {
  if (!std::isfinite(value)) return nullptr;
  return std::strtod(format_number(value, precision).c_str(), nullptr);
}

double json_number(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string write_results(const std::vector<ResultRecord>& records, OutputFormat format, const ResultMeta& meta,
                          int precision) {
  std::ostringstream out;
  if (format == OutputFormat::csv) {
    out << "T_K,G,sigma_G,Q,sigma_Q,C,I,E,channel\n";
    for (const auto& r : records) {
      out << format_number(r.t, precision) << ',' << format_number(r.correlator.value, precision) << ','
          << format_number(r.correlator.sigma, precision) << ',' << format_number(r.discord.value, precision)
          << ',' << format_number(r.discord.sigma, precision) << ',' << format_number(r.classical, precision)
          << ',' << format_number(r.mutual_information, precision) << ','
          << format_number(r.entanglement, precision) << ',' << to_string(r.channel) << '\n';
    }
    return out.str();
  }

  nlohmann::ordered_json doc;
  std::string channel = records.empty() ? "none" : to_string(records.front().channel);
  for (const auto& r : records)
    if (channel != to_string(r.channel)) channel = "mixed";
  doc["meta"]["channel"] = channel;
  doc["meta"]["preset"] = meta.preset ? nlohmann::ordered_json(*meta.preset) : nlohmann::ordered_json(nullptr);
  doc["meta"]["units"] = {{"T_K", "K"}, {"G", "dimensionless"}, {"Q", "bit/dimer"},
                          {"C", "bit/dimer"}, {"I", "bit/dimer"}, {"E", "bit/dimer"}};
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    doc["rows"].push_back({{"T_K", rounded(r.t, precision)},
                           {"G", rounded(r.correlator.value, precision)},
                           {"sigma_G", rounded(r.correlator.sigma, precision)},
                           {"Q", rounded(r.discord.value, precision)},
                           {"sigma_Q", rounded(r.discord.sigma, precision)},
                           {"C", rounded(r.classical, precision)},
                           {"I", rounded(r.mutual_information, precision)},
                           {"E", rounded(r.entanglement, precision)}});
  }
  out << doc.dump(2) << '\n';
  return out.str();
}

void write_results_file(const std::filesystem::path& path, const std::vector<ResultRecord>& records,
                        OutputFormat format, const ResultMeta& meta, int precision) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << write_results(records, format, meta, precision);
  if (!out.flush()) throw DataError("write to " + path.string() + " failed");
}

std::vector<ResultRecord> read_results_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid results JSON: ") + e.what());
  }
  const std::string channel = doc.at("meta").at("channel").get<std::string>();
  std::vector<ResultRecord> records;
  for (const auto& row : doc.at("rows")) {
    ResultRecord r;
    r.t = json_number(row.at("T_K"));
    r.correlator = {json_number(row.at("G")), json_number(row.at("sigma_G"))};
    r.discord = {json_number(row.at("Q")), json_number(row.at("sigma_Q"))};
    r.classical = json_number(row.at("C"));
    r.mutual_information = json_number(row.at("I"));
    r.entanglement = json_number(row.at("E"));
    r.channel = channel == "mixed" ? Channel::theory : channel_from_string(channel);
    records.push_back(r);
  }
  return records;
}

}  // namespace dimer
