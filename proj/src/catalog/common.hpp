#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "nuspectra/catalog.hpp"
#include "nuspectra/errors.hpp"
#include "nuspectra/poly_kernel.hpp"

namespace nuspectra::detail {

double get(const Params& p, const char* key);
int get_int(const Params& p, const char* key);

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::InvalidParams, what);
}

inline double laguerre(int n, double a, double x) { return ortho_eval(Family::Laguerre, n, x, a); }
inline double jacobi(int n, double a, double b, double x) { return ortho_eval(Family::Jacobi, n, x, a, b); }
inline double hermite(int n, double x) { return ortho_eval(Family::Hermite, n, x); }

/// x^p e^(-c x) evaluated in log space so that the product with a large
/// polynomial value does not overflow before the exponential decay wins.
inline double power_exp(double x, double p, double c) {
    if (x <= 0.0) return 0.0;
    return std::exp(p * std::log(x) - c * x);
}

/// Product that treats an underflowed envelope as an exact zero.
inline double damp(double envelope, double poly) {
    if (envelope == 0.0) return 0.0;
    const double v = envelope * poly;
    return std::isfinite(v) ? v : 0.0;
}

ExpPowerProduct epp(LowPoly exponent, std::vector<PowerFactor> factors = {});

CoordinateMap identity_map(const Interval& domain, double scale = 1.0);

/// Fills potential, quantum numbers, energy and units from the model.
BoundState base_state(const PotentialModel& m, const Params& p, int level);

/// Residual window strictly inside a mapped interval.
Interval inner_window(double lo, double hi, double margin);

std::unique_ptr<PotentialModel> make_harmonic_1d();
std::unique_ptr<PotentialModel> make_bessel();
std::unique_ptr<PotentialModel> make_spherical_harmonics();
std::unique_ptr<PotentialModel> make_coulomb();
std::unique_ptr<PotentialModel> make_rel_schrodinger();
std::unique_ptr<PotentialModel> make_dirac_coulomb();
std::unique_ptr<PotentialModel> make_confinement_3d();
std::unique_ptr<PotentialModel> make_oscillator_3d();
std::unique_ptr<PotentialModel> make_poschl_teller();
std::unique_ptr<PotentialModel> make_mod_poschl_teller();
std::unique_ptr<PotentialModel> make_kratzer();
std::unique_ptr<PotentialModel> make_hulthen();
std::unique_ptr<PotentialModel> make_morse();
std::unique_ptr<PotentialModel> make_morse_rotation();
std::unique_ptr<PotentialModel> make_mod_hulthen();
std::unique_ptr<PotentialModel> make_mod_hulthen_rotation();
std::unique_ptr<PotentialModel> make_generalized_morse();
std::unique_ptr<PotentialModel> make_generalized_morse_via_hulthen();

} // namespace nuspectra::detail
