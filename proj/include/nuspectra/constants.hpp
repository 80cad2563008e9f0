#pragma once

/// CODATA 2018 values in Gaussian (CGS) units.
namespace nuspectra::constants {

inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double elementary_charge = 4.803204712570263e-10; ///< statC
inline constexpr double hbar = 1.054571817e-27;                    ///< erg s
inline constexpr double speed_of_light = 2.99792458e10;            ///< cm / s
inline constexpr double electron_mass = 9.1093837015e-28;          ///< g
inline constexpr double erg_per_ev = 1.602176634e-12;

/// E(eV) = E(cm^-1) * 1.2398e-4, the rounded factor used with the molecular table.
inline constexpr double ev_per_wavenumber = 1.2398e-4;

inline double wavenumber_to_ev(double cm) { return cm * ev_per_wavenumber; }

} // namespace nuspectra::constants
