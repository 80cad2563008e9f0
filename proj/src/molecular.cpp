#include "nuspectra/molecular.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

#include "nuspectra/constants.hpp"
#include "nuspectra/errors.hpp"

namespace nuspectra {

MorseRotationCoeffs morse_rotation_coeffs(double alpha) {
    if (alpha == 0.0) fail(ErrorCode::InvalidParams, "alpha must be nonzero");
    const double ia = 1.0 / alpha, ia2 = ia * ia;
    return {1.0 - 3.0 * ia + 3.0 * ia2, 4.0 * ia - 6.0 * ia2, -ia + 3.0 * ia2};
}

double morse_rotation_defect(double alpha, double x) {
    const auto c = morse_rotation_coeffs(alpha);
    const double e = std::exp(-alpha * x);
    return 1.0 / ((1.0 + x) * (1.0 + x)) - (c.C0 + c.C1 * e + c.C2 * e * e);
}

ModHulthenRotationCoeffs mod_hulthen_rotation_coeffs(double b) {
    if (!(b > 1.0)) fail(ErrorCode::InvalidParams, "b must exceed 1");
    const double x0 = std::log(2.0 * b - 1.0);
    const double d = std::pow((2.0 * b - 1.0) * x0, 2);
    const double bm = b - 1.0;
    return {1.0 + 4.0 * bm * (3.0 * bm - (3.0 * b - 1.0) * x0) / d,
            8.0 * bm * bm * (-6.0 * bm + (4.0 * b - 1.0) * x0) / d,
            8.0 * bm * bm * (6.0 * b * bm + (1.0 - 2.0 * b * (b + 1.0)) * x0) / d, x0};
}

double mod_hulthen_rotation_defect(double b, double x) {
    const auto c = mod_hulthen_rotation_coeffs(b);
    const double e = std::exp(-(1.0 + x) * c.x0);
    const double om = -std::expm1(-(1.0 + x) * c.x0);
    return 1.0 / ((1.0 + x) * (1.0 + x)) - c.C0 - e * (c.C1 + c.C2 * e) / (om * om);
}

double mod_hulthen_rotation_cubic(double b) {
    const double x0 = std::log(2.0 * b - 1.0);
    return -4.0 + 3.0 * b * x0 / (b - 1.0) - (1.0 - 2.0 * b + 4.0 * b * b) / (6.0 * (b - 1.0) * (b - 1.0)) * x0 * x0;
}

RotationTerms morse_rotation_terms(double D, double alpha, double r0, double h2m, int l, int v) {
    const double unit = h2m / (r0 * r0);
    const double g = r0 * std::sqrt(D / h2m);
    const double L = l * (l + 1.0), vh = v + 0.5;
    RotationTerms t;
    t.vibrational = -unit * std::pow(g - alpha * vh, 2);
    t.raw = t.vibrational;
    t.rotational = unit * L;
    t.coupling = -unit * 3.0 * (alpha - 1.0) / (alpha * g) * vh * L;
    t.second_order = -unit * 9.0 * std::pow(alpha - 1.0, 2) / (4.0 * std::pow(alpha, 4) * g * g) * L * L;
    t.total = t.vibrational + t.rotational + t.coupling + t.second_order;
    return t;
}

double morse_rotation_unexpanded(double D, double alpha, double r0, double h2m, int l, int v) {
    const auto c = morse_rotation_coeffs(alpha);
    const double g2 = r0 * r0 * D / h2m, L = l * (l + 1.0);
    const double g1sq = g2 - 0.5 * L * c.C1, g2sq = g2 + L * c.C2;
    return h2m / (r0 * r0) * (L * c.C0 - std::pow(g1sq / std::sqrt(g2sq) - alpha * (v + 0.5), 2));
}

ModHulthenRotated mod_hulthen_rotated(double alpha_sq, double beta2, double b, int l) {
    const auto c = mod_hulthen_rotation_coeffs(b);
    const double s = l * (l + 1.0) / (c.x0 * c.x0);
    ModHulthenRotated r;
    r.alpha1_sq = alpha_sq + s * c.C0;
    r.beta1_sq = beta2 - s * c.C1;
    r.beta2_sq = b * beta2 + s * c.C2;
    r.b1 = r.beta2_sq / r.beta1_sq;
    r.kappa1 = std::sqrt(0.25 + r.beta2_sq - r.beta1_sq);
    return r;
}

RotationTerms mod_hulthen_rotation_terms(double V0, double beta2, double b, double a, int l, int v) {
    const auto c = mod_hulthen_rotation_coeffs(b);
    const double beta = std::sqrt(beta2);
    const double h2m = a * a * V0 / beta2;
    auto vib = [&](int ll) {
        const ModHulthenRotated r = mod_hulthen_rotated(0.0, beta2, b, ll);
        const double N = r.kappa1 + v + 0.5;
        return -V0 * std::pow((r.beta2_sq - N * N) / (2.0 * beta * N), 2);
    };
    RotationTerms t;
    t.raw = vib(0);
    t.vibrational = vib(l);
    t.rotational = h2m * l * (l + 1.0) * c.C0 / std::pow(a * c.x0, 2);
    t.total = t.vibrational + t.rotational;
    return t;
}

double morse_phi(double b) {
    if (!(b > 1.0)) fail(ErrorCode::DomainError, "phi(b) needs b > 1");
    const double u = 2.0 * (b - 1.0); // 2b - 1 = 1 + u
    return (1.0 + u) * std::log1p(u) / u;
}

ModHulthenParams match_morse_to_modified_hulthen(double D, double alpha, double r0) {
    if (!(D > 0.0) || !(r0 > 0.0)) fail(ErrorCode::InvalidParams, "D and r0 must be positive");
    double lo = 1.0 + 1e-12, hi = 1e6;
    if (!(alpha > morse_phi(lo) && alpha < morse_phi(hi)))
        fail(ErrorCode::NoSolution, "alpha lies outside the range of phi(b) on the bracket");
    for (int i = 0; i < 300 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (morse_phi(mid) < alpha ? lo : hi) = mid;
    }
    const double b = 0.5 * (lo + hi);
    return {4.0 * (b - 1.0) * D, b, r0 / std::log(2.0 * b - 1.0)};
}

double mod_hulthen_potential(const ModHulthenParams& m, double r) {
    const double y = std::exp(-r / m.a), d = -std::expm1(-r / m.a);
    return -m.V0 * y * (1.0 - m.b * y) / (d * d);
}

double morse_potential(double D, double alpha, double r0, double r) {
    const double e = std::exp(-alpha * (r - r0) / r0);
    return D * (e * e - 2.0 * e);
}

namespace {

/// Zero of an increasing function on [lo, hi] to full double precision.
template <class F>
double increasing_root(F f, double lo, double hi) {
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(), iterations);
    return 0.5 * (a + b);
}

} // namespace

PotentialOverlay morse_hulthen_overlay(const ModHulthenParams& m, double r_lo, double r_hi, int points) {
    if (!(m.b > 1.0) || !(m.V0 > 0.0) || !(m.a > 0.0)) fail(ErrorCode::InvalidParams, "need V0 > 0, a > 0 and b > 1");
    if (!(r_hi > r_lo) || points < 2) fail(ErrorCode::InvalidParams, "empty sampling grid");
    PotentialOverlay o;
    o.hulthen = m;
    o.D = m.V0 / (4.0 * (m.b - 1.0));
    o.r0 = m.a * std::log(2.0 * m.b - 1.0);
    o.alpha = morse_phi(m.b);
    // dU/dr has the sign of 1 + y - 2 b y for the modified Hulthen well, y = e^(-r/a),
    // and of 1 - e^(-alpha x) for the Morse well.
    o.hulthen_min = increasing_root(
        [&](double r) {
            const double y = std::exp(-r / m.a);
            return 1.0 + y - 2.0 * m.b * y;
        },
        1e-9 * m.a, m.a * (std::log(2.0 * m.b - 1.0) + 40.0));
    o.morse_min = increasing_root([&](double r) { return -std::expm1(-o.alpha * (r - o.r0) / o.r0); }, 1e-9 * o.r0,
                                  o.r0 * (1.0 + 40.0 / o.alpha));
    for (int i = 0; i < points; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (points - 1);
        o.r.push_back(r);
        o.morse.push_back(morse_potential(o.D, o.alpha, o.r0, r));
        o.mod_hulthen.push_back(mod_hulthen_potential(m, r));
    }
    return o;
}

ModHulthenParams generalized_morse_params(double D, double a_rate, double r0) {
    if (!(D > 0.0) || !(a_rate > 0.0) || !(r0 > 0.0)) fail(ErrorCode::InvalidParams, "D, a and r0 must be positive");
    const double e = std::exp(a_rate * r0);
    return {2.0 * D * (e - 1.0), 0.5 * (1.0 + e), 1.0 / a_rate};
}

const std::vector<MoleculeRow>& molecule_table() {
    static const std::vector<MoleculeRow> rows{
        {"H2", 60.8296, 38292.0, 1.440, 1.5904, 67394.0},
        {"HCl", 10.5930, 37244.0, 2.380, 4.51744, 524010.0},
        {"I2", 0.0374, 12550.0, 4.954, 68.848, 198490.0},
    };
    return rows;
}

MoleculeComparison compare_molecule(const MoleculeRow& row) {
    MoleculeComparison c;
    c.table = row;
    const ModHulthenParams m = match_morse_to_modified_hulthen(row.D, row.alpha, 1.0);
    c.b = m.b;
    c.V0 = m.V0;
    c.b_rel_error = std::abs(c.b - row.b) / row.b;
    c.V0_rel_error = std::abs(c.V0 - row.V0) / row.V0;
    c.D_ev = constants::wavenumber_to_ev(row.D);
    c.V0_ev = constants::wavenumber_to_ev(c.V0);
    c.V0_table_ev = constants::wavenumber_to_ev(row.V0);
    c.consistent = std::abs(c.b - row.b) <= 1e-3 && c.V0_rel_error <= 5e-4;
    return c;
}

} // namespace nuspectra
