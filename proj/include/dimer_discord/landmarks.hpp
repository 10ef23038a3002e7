#pragma once

// Characteristic temperatures and correlation values of a dimer.

#include <string>
#include <vector>

#include "dimer_discord/numerics.hpp"
#include "dimer_discord/types.hpp"

namespace dimer {

/// Temperature (K) where discord and entanglement of formation are equal, and
/// their common value. Antiferromagnetic only.
Crossing<double> discord_entanglement_crossing(const DimerParameters& params);

/// Temperature (K) where classical correlation and entanglement of formation
/// are equal; value is C = E there.
Crossing<double> classical_entanglement_crossing(const DimerParameters& params);

struct Landmark {
  std::string name;
  double reduced = 0.0;  // dimensionless: k_B T/|J| for temperatures, |J| chi/(N_A g^2 mu_B^2) for chi
  double value = 0.0;    // in unit
  std::string unit;
};

/// Every landmark that applies to the coupling sign of params.
std::vector<Landmark> compute_landmarks(const DimerParameters& params);

}  // namespace dimer
