#pragma once

// Reference values produced by the 50-digit oracle (tests/oracle.hpp) and
// re-verified against it in test_oracle.cpp.

namespace frozen {

inline constexpr double kG_nitrate_4K = -0.398586314658467215;  // J/kB = -2.59 K, T = 4 K
inline constexpr double kE_c_half = 0.354578902665269884;      // E(concurrence 0.5)

inline constexpr double kT_QE = 0.588082791183096800;  // k_B T / |J|
inline constexpr double kQ_QE = 0.746202334097120076;
inline constexpr double kT_CE = 0.926056060310742076;
inline constexpr double kC_CE = 0.339099093801386658;
inline constexpr double kQ_at_T_CE = 0.431061187857837805;

inline constexpr double kI_e = 0.207518749639421909;
inline constexpr double kQ_e = 0.125814583693911424;
inline constexpr double kC_0 = 0.0817041659455104852;
inline constexpr double kQ0_over_C0 = 4.07975933021135593;

inline constexpr double kQ_m054 = 0.301676054618512363;
inline constexpr double kQ_m063 = 0.399044796229090094;
inline constexpr double kQ_m045 = 0.216956576455750541;

inline constexpr double kCm_of_G_m042 = 0.454646937278881375;
inline constexpr double kCmPeak_af_G = -0.801993616095392911;
inline constexpr double kCmPeak_af = 1.02349055438650514;
inline constexpr double kCmPeak_f_G = 0.283971640672312030;
inline constexpr double kCmPeak_f = 0.166320553814878490;
inline constexpr double kTmax_cm_af = 0.702990424143089367;  // k_B T / |J|
inline constexpr double kTmax_cm_f = 0.925957461008468045;

inline constexpr double kW_3_over_e = 0.603545739535836010;
inline constexpr double kTmax_chi = 1.24723601621673857;
inline constexpr double kChiMax_reduced = 0.201181913178612003;
inline constexpr double kCurie = 0.375148096120957041;  // emu K / mol

inline constexpr double kChi_nitrate_peak = 0.131255232519837176;  // J/kB=-2.56, g=2.11, T=3.193 K
inline constexpr double kChiT_ferro_300K = 0.898209972412429171;   // J/kB=35.4, g=2.13
inline constexpr double kG_ferro_chiT089 = 0.0458226628084168059;
inline constexpr double kQ_ferro_chiT089 = 0.00317962401710908636;
inline constexpr double kG_nitrate_chi = -0.396478321225677082;  // chi = 0.126, T = 4, g = 2.11
inline constexpr double kQ_nitrate_chi = 0.172494484944092225;
inline constexpr double kCm_nitrate_chi = 0.411408999771440650;
inline constexpr double kG_u165 = -0.424710424710424710;  // u/R = -1.65 K at J/kB = -2.59 K
inline constexpr double kQ_u165 = 0.195394798564122721;
inline constexpr double kG_cm04125 = -0.397079224800752773;  // hot antiferro branch
inline constexpr double kQ_cm04125 = 0.172968972077916886;
inline constexpr double kQ_hydrate_400K = 0.108337021665625372;
inline constexpr double kQ_anhydrous_400K = 0.121573093365342394;

inline constexpr double kT_e_reduced = 1.82047845325367479;
inline constexpr double kPowder_2_2_24 = 2.14165045389453474;
inline constexpr double kCmIntegral_0_50 = 1.48485052512739421;  // J/kB = -1 K

}  // namespace frozen
