#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dimer {

enum class SeriesKind { susceptibility, specific_heat, correlator };

/// Extensive values (chi, c_m) are held per mole of dimers internally;
/// per_monomer only describes files before ingestion.
enum class Normalization { per_dimer, per_monomer };

struct SeriesRow {
  double t = 0.0;  // kelvin
  double value = 0.0;
  std::optional<double> sigma;
};

/// Ordered (T, value[, sigma]) records of one observable.
///
/// Units: susceptibility "emu_per_mol", specific heat "cm_over_R",
/// correlator "dimensionless".
struct MeasurementSeries {
  SeriesKind kind = SeriesKind::susceptibility;
  std::string units = "emu_per_mol";
  Normalization normalization = Normalization::per_dimer;
  std::vector<SeriesRow> rows;

  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
};

const char* to_string(SeriesKind kind);
const char* to_string(Normalization n);

}  // namespace dimer
