#pragma once

#include <array>
#include <complex>

#include "nuspectra/nu_engine.hpp"

namespace nuspectra {

using Complex = std::complex<double>;

/// Complex polynomial c0 + c1 z + c2 z^2.
struct ComplexPoly {
    std::array<Complex, 3> c{};
    Complex operator()(Complex z) const { return c[0] + z * (c[1] + z * c[2]); }
    Complex derivative(Complex z) const { return c[1] + 2.0 * c[2] * z; }
};

/// The Bessel equation z^2 u'' + z u' + (z^2 - nu^2) u = 0 in NU form and the
/// complex branch with phi = z^nu e^(iz), which the real engine cannot produce.
struct BesselFixture {
    double nu = 0.0;
    NuEquation equation; ///< sigma = z, tau~ = 1, sigma~ = z^2 - nu^2
    Complex k;
    ComplexPoly pi;
    ComplexPoly tau;
    Complex lambda;
    /// phi = z^phi_power e^(phi_rate z), rho = z^rho_power e^(rho_rate z)
    double phi_power = 0.0;
    Complex phi_rate;
    double rho_power = 0.0;
    Complex rho_rate;
};

/// Tabulated branch for order nu.
BesselFixture bessel_reduction_fixture(double nu);

struct ComplexBranch {
    Complex k;
    ComplexPoly pi;
    ComplexPoly tau;
    Complex lambda;
};

/// The (k, pi) reduction redone in complex arithmetic from the equation's
/// coefficients. `k_index` and `pi_index` pick the root and the sign.
ComplexBranch complex_branch(const NuEquation& eq, int k_index, int pi_index);

struct SeriesValue {
    Complex y, dy, d2y;
};

/// Power series y = sum c_j z^j of z y'' + (2iz + 2nu + 1) y' + i(2nu + 1) y = 0, c_0 = 1.
SeriesValue bessel_reduced_series(double nu, Complex z, int terms = 80);

/// Residual of the reduced equation at z, relative to the size of its terms.
double bessel_reduced_residual(double nu, Complex z, int terms = 80);

/// Residual of the Bessel equation for u = z^nu e^(iz) y, relative to the size of its terms.
double bessel_substitution_residual(double nu, Complex z, int terms = 80);

/// J_nu(z) = (z/2)^nu e^(iz) y(z) / Gamma(nu + 1) for real z > 0.
double bessel_j_reduced(double nu, double z, int terms = 80);

/// Ascending series of J_nu for real z > 0.
double bessel_j_series(double nu, double z, int terms = 80);

} // namespace nuspectra
