#pragma once

// CGS-emu physical constants (CODATA 2018 exact / recommended values).

namespace dimer::constants {

inline constexpr double kBoltzmann = 1.380649e-16;        // erg/K
inline constexpr double kBohrMagneton = 9.2740100783e-21;  // erg/G
inline constexpr double kAvogadro = 6.02214076e23;         // 1/mol

/// N_A mu_B^2 / k_B in emu K / mol (~0.375148).
inline constexpr double kCuriePrefactor =
    kAvogadro * kBohrMagneton * kBohrMagneton / kBoltzmann;

/// Gas constant R = k_B N_A in J/(mol K).
inline constexpr double kGasConstantSI = 1.380649e-23 * kAvogadro;

}  // namespace dimer::constants
