#pragma once

// Quantum-information quantities of the two-qubit Heisenberg thermal state.
//
// The thermal state of H = -(1/2) J s1.s2 is rho = (1 + G s1.s2) / 4, so
// every measure below is a closed-form function of the single correlator G.

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dimer_discord/errors.hpp"
#include "dimer_discord/types.hpp"

namespace dimer {

template <typename Scalar>
using DensityMatrix4 = Eigen::Matrix<Scalar, 4, 4>;

template <typename Scalar>
using Spectrum4 = Eigen::Matrix<Scalar, 4, 1>;

namespace detail {

/// |2J/k_BT| above which exp() would overflow; the state is then the T = 0 one.
inline constexpr double kZeroTemperatureGuard = 700.0;

/// x log2 x with the 0 log 0 = 0 convention.
template <typename Scalar>
Scalar xlog2(Scalar x) {
  using std::log2;
  return x < Scalar(1e-30) ? Scalar(0) : x * log2(x);
}

/// Binary entropy in bits.
template <typename Scalar>
Scalar binary_entropy(Scalar p) {
  return Scalar(0) - xlog2(p) - xlog2(Scalar(1) - p);  // +0 rather than -0 at the endpoints
}

}  // namespace detail

/// G(T) = -1 + 4 / (3 + exp(-2J/k_BT)).
template <typename Scalar>
Correlator<Scalar> correlator_from_temperature(const DimerParameters& params, Scalar t) {
  using std::abs;
  using std::exp;
  using std::expm1;
  params.validate();
  if (!(t > 0)) throw DomainError("temperature must be positive");
  const Scalar x = Scalar(2 * params.j_over_kb) / t;
  if (abs(x) > Scalar(detail::kZeroTemperatureGuard))
    return Correlator<Scalar>::ground_state(params.coupling());
  // (1 - e^{-x}) / (3 + e^{-x}) is the same expression without the
  // cancellation at high temperature.
  return Correlator<Scalar>::from(-expm1(-x) / (Scalar(3) + exp(-x)));
}

/// I = [(1-3G) log2(1-3G) + 3(1+G) log2(1+G)] / 4.
template <typename Scalar>
Scalar mutual_information(Correlator<Scalar> c) {
  const Scalar g = c.value();
  return (detail::xlog2(Scalar(1) - Scalar(3) * g) + Scalar(3) * detail::xlog2(Scalar(1) + g)) /
         Scalar(4);
}

/// Measurement-optimized classical correlation, C = 1 - h((1 + |G|)/2).
template <typename Scalar>
Scalar classical_correlation(Correlator<Scalar> c) {
  using std::abs;
  const Scalar a = abs(c.value());
  return (detail::xlog2(Scalar(1) + a) + detail::xlog2(Scalar(1) - a)) / Scalar(2);
}

/// Thermal discord Q = I - C.
template <typename Scalar>
Scalar discord(Correlator<Scalar> c) {
  return mutual_information(c) - classical_correlation(c);
}

/// Wootters concurrence. Zero for ferromagnetic coupling; for the
/// antiferromagnet max(0, -(1 + 3G)/2).
template <typename Scalar>
Scalar concurrence(Correlator<Scalar> c, Coupling coupling) {
  const Scalar g = c.value();
  const Scalar tol(Correlator<Scalar>::kTolerance);
  if (coupling == Coupling::ferromagnetic) {
    if (g < -tol) throw DomainError("negative correlator is inconsistent with ferromagnetic coupling");
    return Scalar(0);
  }
  if (g > tol) throw DomainError("positive correlator is inconsistent with antiferromagnetic coupling");
  return std::max(Scalar(0), -(Scalar(1) + Scalar(3) * g) / Scalar(2));
}

/// E = h((1 + sqrt(1 - c^2)) / 2) in bits.
template <typename Scalar>
Scalar entanglement_of_formation(Scalar c_tilde) {
  using std::sqrt;
  if (!(c_tilde >= Scalar(0) && c_tilde <= Scalar(1)))
    throw DomainError("concurrence must lie in [0, 1]");
  const Scalar s = sqrt(Scalar(1) - c_tilde * c_tilde);
  return detail::binary_entropy((Scalar(1) + s) / Scalar(2));
}

/// Temperature above which the antiferromagnetic dimer is separable,
/// T_e = 2|J| / (k_B ln 3).
inline double entanglement_death_temperature(const DimerParameters& params) {
  params.validate();
  if (!params.antiferro())
    throw DomainError("ferromagnetic dimer: no entanglement at any T");
  return 2.0 * std::abs(params.j_over_kb) / std::log(3.0);
}

/// rho = (1 + G s1.s2)/4 in the basis {|00>, |01>, |10>, |11>}.
template <typename Scalar>
DensityMatrix4<Scalar> density_matrix(Correlator<Scalar> c) {
  const Scalar g = c.value();
  DensityMatrix4<Scalar> rho = DensityMatrix4<Scalar>::Zero();
  rho(0, 0) = rho(3, 3) = (Scalar(1) + g) / Scalar(4);
  rho(1, 1) = rho(2, 2) = (Scalar(1) - g) / Scalar(4);
  rho(1, 2) = rho(2, 1) = g / Scalar(2);
  return rho;
}

/// Transpose over the second qubit: rho_{(ij),(kl)} -> rho_{(il),(kj)}.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 4, 4> partial_transpose(const Eigen::MatrixBase<Derived>& rho) {
  eigen_assert(rho.rows() == 4 && rho.cols() == 4);
  Eigen::Matrix<typename Derived::Scalar, 4, 4> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + l, 2 * k + j) = rho(2 * i + j, 2 * k + l);
  return out;
}

/// Ascending eigenvalues of the partially transposed thermal state:
/// (1 + 3G)/4 once and (1 - G)/4 three times. A negative entry flags
/// entanglement (PPT criterion).
template <typename Scalar>
Spectrum4<Scalar> ppt_eigenvalues(Correlator<Scalar> c) {
  const Eigen::SelfAdjointEigenSolver<DensityMatrix4<Scalar>> solver(
      partial_transpose(density_matrix(c)), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// All five measures for a correlator. The concurrence branch follows the
/// sign of G (both branches agree at G = 0).
template <typename Scalar>
CorrelationSet<Scalar> correlation_set(Correlator<Scalar> c) {
  const Coupling coupling = c.value() < Scalar(0) ? Coupling::antiferromagnetic : Coupling::ferromagnetic;
  CorrelationSet<Scalar> out;
  out.mutual_information = mutual_information(c);
  out.classical = classical_correlation(c);
  out.discord = out.mutual_information - out.classical;
  out.concurrence = concurrence(c, coupling);
  out.entanglement = entanglement_of_formation(out.concurrence);
  return out;
}

template <typename Scalar>
CorrelationSet<Scalar> correlation_set(const DimerParameters& params, Scalar t) {
  const auto c = correlator_from_temperature(params, t);
  CorrelationSet<Scalar> out = correlation_set(c);
  out.concurrence = concurrence(c, params.coupling());
  out.entanglement = entanglement_of_formation(out.concurrence);
  return out;
}

}  // namespace dimer
