#pragma once

// File formats, material presets and result serialization.
//
// Series CSV (UTF-8, '#' comments, header required):
//   susceptibility  T_K,chi_emu_per_mol[,sigma_chi]
//   specific heat   T_K,cm_over_R[,sigma]        (or T_K,cm_J_per_mol_K[,sigma])
//   correlator      T_K,G[,sigma_G]

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dimer_discord/series.hpp"
#include "dimer_discord/types.hpp"

namespace dimer {

/// Unit tag accepted for each kind; specific heat also takes "cm_J_per_mol_K".
std::string_view canonical_units(SeriesKind kind);

/// Parses a series. per_monomer files are doubled into per_dimer values
/// (sigmas too); cm_J_per_mol_K values are divided by R. Rows come back
/// sorted by temperature. source names the input in error messages.
MeasurementSeries parse_series(std::istream& in, SeriesKind kind, std::string_view units,
                               Normalization normalization, std::string_view source = "<stream>");

MeasurementSeries load_series(const std::filesystem::path& path, SeriesKind kind, std::string_view units,
                              Normalization normalization);

/// Writes a per-dimer series back in the CSV schema above.
void write_series(std::ostream& out, const MeasurementSeries& series, int precision = 6);

struct MaterialPreset {
  std::string name;
  double j_over_kb = 0.0;
  std::optional<double> g_factor;
  std::string source;

  DimerParameters parameters() const { return DimerParameters::from_j(j_over_kb, g_factor); }
};

const std::vector<MaterialPreset>& preset_registry();

/// Looks up a preset by name; unknown names raise DataError listing the registry.
const MaterialPreset& preset(std::string_view name);

/// "-0.54(9)" -> {-0.54, 0.09}: the bracketed digits are the uncertainty in
/// the last quoted decimal places. A bare number has sigma 0. Accepts an
/// ASCII or U+2212 minus sign.
ValueWithUncertainty parse_parenthesized(std::string_view text);

/// Inverse of parse_parenthesized with the uncertainty rounded to one
/// significant digit: {0.3017, 0.091} -> "0.30(9)".
std::string format_parenthesized(ValueWithUncertainty v);

enum class Channel { neutron, calorimetric, magnetometric, theory };

const char* to_string(Channel c);
Channel channel_from_string(std::string_view s);

struct ResultRecord {
  double t = 0.0;  // kelvin; NaN when the temperature is not known
  ValueWithUncertainty correlator;
  ValueWithUncertainty discord;
  double classical = 0.0;
  double mutual_information = 0.0;
  double entanglement = 0.0;
  Channel channel = Channel::theory;
};

/// Full correlation set at correlator g, with sigma_Q propagated from sigma_G
/// by the secant rule.
ResultRecord make_result_record(double t, ValueWithUncertainty g, Channel channel);

enum class OutputFormat { csv, json };

OutputFormat output_format_from_string(std::string_view s);

struct ResultMeta {
  std::optional<std::string> preset;
};

/// Formats with printf "%.<precision>g"; NaN prints as "nan".
std::string format_number(double value, int precision = 6);

/// CSV columns T_K,G,sigma_G,Q,sigma_Q,C,I,E,channel. JSON is
/// {"meta": {channel, preset, units}, "rows": [{T_K, G, sigma_G, Q, sigma_Q, C, I, E}]}.
std::string write_results(const std::vector<ResultRecord>& records, OutputFormat format,
                          const ResultMeta& meta = {}, int precision = 6);

void write_results_file(const std::filesystem::path& path, const std::vector<ResultRecord>& records,
                        OutputFormat format, const ResultMeta& meta = {}, int precision = 6);

/// Reads the JSON produced by write_results.
std::vector<ResultRecord> read_results_json(std::string_view text);

}  // namespace dimer
