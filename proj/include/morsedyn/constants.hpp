#pragma once

// CODATA 2018 values, SI.
namespace morsedyn::constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double atomic_mass_kg = 1.66053906660e-27;
inline constexpr double electron_volt_J = 1.602176634e-19;
inline constexpr double hbar_Js = 1.054571817e-34;
inline constexpr double elementary_charge_C = 1.602176634e-19;
inline constexpr double speed_of_light_m_s = 299792458.0;

// 1 Debye = 1e-21 / c  C m
inline constexpr double debye_Cm = 1.0e-21 / speed_of_light_m_s;

} // namespace morsedyn::constants
