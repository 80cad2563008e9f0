#include "nuspectra/bessel.hpp"

#include <cmath>

#include "nuspectra/errors.hpp"

namespace nuspectra {

namespace {

constexpr Complex I{0.0, 1.0};

std::array<Complex, 2> quadratic_roots(Complex a, Complex b, Complex c) {
    if (std::abs(a) == 0.0) {
        if (std::abs(b) == 0.0) fail(ErrorCode::NoRealK, "no k makes the radicand a square");
        return {-c / b, -c / b};
    }
    const Complex d = std::sqrt(b * b - 4.0 * a * c);
    return {(-b + d) / (2.0 * a), (-b - d) / (2.0 * a)};
}

} // namespace

BesselFixture bessel_reduction_fixture(double nu) {
    if (!(nu >= 0.0)) fail(ErrorCode::InvalidParams, "nu must be nonnegative");
    BesselFixture f;
    f.nu = nu;
    f.equation = {LowPoly(0.0, 1.0), LowPoly(-nu * nu, 0.0, 1.0), LowPoly(1.0), Interval::half_line(0.0)};
    f.k = 2.0 * I * nu;
    f.pi = {{nu, I, 0.0}};
    f.tau = {{1.0 + 2.0 * nu, 2.0 * I, 0.0}};
    f.lambda = I * (2.0 * nu + 1.0);
    f.phi_power = nu;
    f.phi_rate = I;
    f.rho_power = 2.0 * nu;
    f.rho_rate = 2.0 * I;
    return f;
}

ComplexBranch complex_branch(const NuEquation& eq, int k_index, int pi_index) {
    // pi = p +- sqrt(Q), p = (sigma' - tau~)/2, Q = p^2 - sigma~ + k sigma.
    const LowPoly p = 0.5 * (eq.sigma.derivative() - eq.tau_tilde);
    const LowPoly q = multiply(p, p) - eq.sigma_tilde;
    const LowPoly& s = eq.sigma;
    // Zero discriminant of (q0 + k s0) + (q1 + k s1) z + (q2 + k s2) z^2, a quadratic in k.
    const double a = s.c[1] * s.c[1] - 4.0 * s.c[0] * s.c[2];
    const double b = 2.0 * q.c[1] * s.c[1] - 4.0 * (q.c[0] * s.c[2] + q.c[2] * s.c[0]);
    const double c = q.c[1] * q.c[1] - 4.0 * q.c[0] * q.c[2];
    const Complex k = quadratic_roots(a, b, c)[k_index & 1];
    const Complex A = q.c[0] + k * s.c[0], B = q.c[1] + k * s.c[1], C = q.c[2] + k * s.c[2];
    // sqrt(Q) = sqrt(C) (z + B/(2C)), or sqrt(A) when Q is constant.
    ComplexPoly root;
    if (std::abs(C) > 0.0) {
        const Complex sc = std::sqrt(C);
        root = {{sc * B / (2.0 * C), sc, 0.0}};
    } else {
        root = {{std::sqrt(A), 0.0, 0.0}};
    }
    const double sign = pi_index == 0 ? 1.0 : -1.0;
    ComplexBranch out;
    out.k = k;
    for (int i = 0; i < 3; ++i) out.pi.c[i] = p.c[i] + sign * root.c[i];
    for (int i = 0; i < 3; ++i) out.tau.c[i] = eq.tau_tilde.c[i] + 2.0 * out.pi.c[i];
    out.lambda = k + out.pi.c[1];
    return out;
}

SeriesValue bessel_reduced_series(double nu, Complex z, int terms) {
    // c_{j+1} = -i (2j + 2nu + 1) c_j / ((j + 1)(j + 2nu + 1))
    SeriesValue v{};
    Complex c = 1.0, zp = 1.0;
    Complex prev1 = 0.0, prev2 = 0.0; // z^(j-1), z^(j-2)
    for (int j = 0; j < terms; ++j) {
        v.y += c * zp;
        if (j >= 1) v.dy += double(j) * c * prev1;
        if (j >= 2) v.d2y += double(j) * (j - 1) * c * prev2;
        prev2 = prev1;
        prev1 = zp;
        zp *= z;
        c *= -I * (2.0 * j + 2.0 * nu + 1.0) / ((j + 1.0) * (j + 2.0 * nu + 1.0));
    }
    return v;
}

double bessel_reduced_residual(double nu, Complex z, int terms) {
    const SeriesValue s = bessel_reduced_series(nu, z, terms);
    const Complex t1 = z * s.d2y, t2 = (2.0 * I * z + 2.0 * nu + 1.0) * s.dy, t3 = I * (2.0 * nu + 1.0) * s.y;
    return std::abs(t1 + t2 + t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3));
}

double bessel_substitution_residual(double nu, Complex z, int terms) {
    const SeriesValue s = bessel_reduced_series(nu, z, terms);
    // u = phi y with phi = z^nu e^(iz); phi'/phi = nu/z + i, (phi'/phi)' = -nu/z^2.
    const Complex phi = std::pow(z, nu) * std::exp(I * z);
    const Complex g = nu / z + I;
    const Complex u = phi * s.y;
    const Complex du = phi * (s.dy + g * s.y);
    const Complex d2u = phi * (s.d2y + 2.0 * g * s.dy + (g * g - nu / (z * z)) * s.y);
    const Complex t1 = z * z * d2u, t2 = z * du, t3 = (z * z - nu * nu) * u;
    return std::abs(t1 + t2 + t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3));
}

double bessel_j_reduced(double nu, double z, int terms) {
    const Complex y = bessel_reduced_series(nu, z, terms).y;
    return std::real(std::exp(I * z) * y) * std::exp(nu * std::log(0.5 * z) - std::lgamma(nu + 1.0));
}

double bessel_j_series(double nu, double z, int terms) {
    double sum = 0.0;
    const double x2 = -0.25 * z * z;
    double term = std::exp(nu * std::log(0.5 * z) - std::lgamma(nu + 1.0));
    for (int m = 0; m < terms; ++m) {
        sum += term;
        term *= x2 / ((m + 1.0) * (m + 1.0 + nu));
    }
    return sum;
}

} // namespace nuspectra
