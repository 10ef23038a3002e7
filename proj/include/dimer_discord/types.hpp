#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "dimer_discord/errors.hpp"

namespace dimer {

enum class Coupling { antiferromagnetic, ferromagnetic };

inline const char* to_string(Coupling c) {
  return c == Coupling::antiferromagnetic ? "antiferromagnetic" : "ferromagnetic";
}

/// Isotropic spin-spin correlator G = <s1^a s2^a> of the thermal dimer state.
///
/// Physical range is [-1, 1/3]: [-1, 0] for antiferromagnetic coupling and
/// [0, 1/3] for ferromagnetic coupling. Values within kTolerance of the range
/// are clamped onto it; anything further out is rejected.
template <typename Scalar = double>
class Correlator {
 public:
  static constexpr double kTolerance = 1e-9;

  static Scalar lower() { return Scalar(-1); }
  static Scalar upper() { return Scalar(1) / Scalar(3); }

  static Correlator from(Scalar g) {
    using std::isnan;
    if (isnan(g)) throw DomainError("correlator is NaN");
    if (g < lower() - Scalar(kTolerance) || g > upper() + Scalar(kTolerance)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "correlator G = " << static_cast<double>(g)
          << " outside the physical range [-1, 1/3]";
      throw DomainError(msg.str());
    }
    if (g < lower()) g = lower();
    if (g > upper()) g = upper();
    return Correlator(g);
  }

  /// Zero-temperature limit: singlet (-1) or ferromagnetic triplet mixture (1/3).
  static Correlator ground_state(Coupling c) {
    return Correlator(c == Coupling::antiferromagnetic ? lower() : upper());
  }

  Scalar value() const { return g_; }

 private:
  explicit Correlator(Scalar g) : g_(g) {}
  Scalar g_;
};

/// sqrt((gx^2 + gy^2 + gz^2) / 3), the powder-averaged g-factor.
inline double powder_g(double gx, double gy, double gz) {
  if (!(gx > 0) || !(gy > 0) || !(gz > 0))
    throw DomainError("g-factor components must be positive");
  return std::sqrt((gx * gx + gy * gy + gz * gz) / 3.0);
}

/// Lande factor, either isotropic or given per principal axis.
struct GFactor {
  std::array<double, 3> components{2.0, 2.0, 2.0};

  static GFactor isotropic(double g) { return GFactor{{g, g, g}}; }
  static GFactor axes(double gx, double gy, double gz) { return GFactor{{gx, gy, gz}}; }

  /// Value entering the Bleaney-Bowers prefactor (powder average for axes).
  double effective() const { return powder_g(components[0], components[1], components[2]); }
};

/// Exchange coupling of H = -(1/2) J s1.s2 (Pauli matrices) as J/k_B in
/// kelvin, plus an optional g-factor. Negative J is antiferromagnetic.
///
/// Literature often quotes 2J/k_B; use from_two_j() for those values.
struct DimerParameters {
  double j_over_kb = -1.0;
  std::optional<GFactor> g_factor;

  static DimerParameters from_j(double j_over_kb, std::optional<double> g = std::nullopt) {
    DimerParameters p{j_over_kb, std::nullopt};
    if (g) p.g_factor = GFactor::isotropic(*g);
    p.validate();
    return p;
  }
  static DimerParameters from_two_j(double two_j_over_kb, std::optional<double> g = std::nullopt) {
    return from_j(0.5 * two_j_over_kb, g);
  }

  void validate() const {
    if (!(j_over_kb != 0.0) || !std::isfinite(j_over_kb))
      throw DomainError("exchange coupling J/k_B must be finite and non-zero");
    if (g_factor) (void)g_factor->effective();
  }

  Coupling coupling() const {
    return j_over_kb < 0 ? Coupling::antiferromagnetic : Coupling::ferromagnetic;
  }
  bool antiferro() const { return coupling() == Coupling::antiferromagnetic; }

  double g() const {
    if (!g_factor) throw DomainError("g-factor is required but was not set");
    return g_factor->effective();
  }
};

/// Correlation measures of one dimer state, all in bits except concurrence.
template <typename Scalar = double>
struct CorrelationSet {
  Scalar mutual_information{};
  Scalar classical{};
  Scalar discord{};
  Scalar concurrence{};
  Scalar entanglement{};
};

/// Central value with a one-sigma half-width.
struct ValueWithUncertainty {
  double value = 0.0;
  double sigma = 0.0;
};

}  // namespace dimer
