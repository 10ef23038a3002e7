#include "dimer_discord/numerics.hpp"

#include <sstream>

namespace dimer {

const char* to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::susceptibility: return "susceptibility";
    case SeriesKind::specific_heat: return "specific_heat";
    case SeriesKind::correlator: return "correlator";
  }
  return "unknown";
}

const char* to_string(Normalization n) {
  return n == Normalization::per_dimer ? "per_dimer" : "per_monomer";
}

namespace {

void check_ordered(const MeasurementSeries& series) {
  double previous = 0.0;
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    const double t = series.rows[i].t;
    if (!(t > previous)) {
      std::ostringstream msg;
      msg << "row " << i << ": temperatures must be positive and strictly increasing (T = " << t << " K)";
      throw DataError(msg.str());
    }
    previous = t;
  }
}

double clamped_value(const MeasurementSeries& series, std::size_t i, IntegrationResult& result) {
  const double v = series.rows[i].value;
  if (v < 0) {
    result.clamped_rows.push_back(i);
    return 0.0;
  }
  return v;
}

}  // namespace

IntegrationResult integrate_series_with_tail(const MeasurementSeries& series, const TailModel& tail) {
  check_ordered(series);
  if (!(tail.coefficient >= 0)) throw DataError("tail coefficient must be non-negative");
  if (!(tail.t_start > 0)) throw DataError("tail start temperature must be positive");
  if (!series.empty() && tail.t_start < series.rows.back().t)
    throw DataError("tail must start at or after the last data temperature");

  IntegrationResult result;
  double previous_t = 0.0, previous_v = 0.0;
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    const double v = clamped_value(series, i, result);
    result.value += 0.5 * (series.rows[i].t - previous_t) * (v + previous_v);
    previous_t = series.rows[i].t;
    previous_v = v;
  }
  result.value += tail.coefficient / tail.t_start;
  return result;
}

IntegrationResult integrate_series_up_to(const MeasurementSeries& series, double t) {
  check_ordered(series);
  if (!(t >= 0)) throw DataError("upper integration limit must be non-negative");
  if (series.empty() || t > series.rows.back().t)
    throw DataError("data do not extend to the requested temperature");

  IntegrationResult result;
  double previous_t = 0.0, previous_v = 0.0;
  for (std::size_t i = 0; i < series.rows.size() && previous_t < t; ++i) {
    const double ti = series.rows[i].t;
    const double v = clamped_value(series, i, result);
    if (ti <= t) {
      result.value += 0.5 * (ti - previous_t) * (v + previous_v);
    } else {
      const double v_end = previous_v + (v - previous_v) * (t - previous_t) / (ti - previous_t);
      result.value += 0.5 * (t - previous_t) * (v_end + previous_v);
    }
    previous_t = ti;
    previous_v = v;
  }
  return result;
}

}  // namespace dimer
