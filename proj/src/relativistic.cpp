#include "nuspectra/relativistic.hpp"

#include <cmath>
#include <functional>

#include "nuspectra/errors.hpp"
#include "nuspectra/poly_kernel.hpp"

namespace nuspectra {

namespace {

double dirac_nu(double mu, int kappa) {
    if (kappa == 0) fail(ErrorCode::InvalidParams, "kappa must be a nonzero integer");
    if (!(mu < std::abs(kappa)))
        fail(ErrorCode::SupercriticalCharge, "mu must be below |kappa| for a real nu");
    return std::sqrt(double(kappa) * kappa - mu * mu);
}

/// 1/sqrt(1 + x) - 1 without cancellation for small x.
double inv_sqrt_minus_one(double x) {
    const double s = std::sqrt(1.0 + x);
    return -x / (s * (1.0 + s));
}

Matrix2 product(const Matrix2& p, const Matrix2& q) {
    Matrix2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
    return r;
}

/// Value at 0 of the polynomial in t through (t_i, y_i), Neville's scheme.
double extrapolate_to_zero(const std::vector<double>& t, std::vector<double> y) {
    const std::size_t n = t.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i) y[i] = (t[i + m] * y[i] - t[i] * y[i + 1]) / (t[i + m] - t[i]);
    return y[0];
}

/// Full extrapolation checked against the one that drops the largest sample.
double stable_extrapolation(const std::vector<double>& t, const std::vector<double>& y, const char* what) {
    const double full = extrapolate_to_zero(t, y);
    if (t.size() >= 3) {
        const double tail = extrapolate_to_zero({t.begin() + 1, t.end()}, {y.begin() + 1, y.end()});
        if (std::abs(full - tail) > 1e-2 * std::max(std::abs(full), 1e-300))
            fail(ErrorCode::ExtrapolationUnstable, std::string("estimates of the ") + what + " coefficient disagree");
    }
    return full;
}

} // namespace

Matrix2 DiracDecoupling::original(double x) const {
    return {{{-kappa / x, 1.0 + epsilon + mu / x}, {1.0 - epsilon - mu / x, kappa / x}}};
}

Matrix2 DiracDecoupling::transformed(double x) const {
    const Matrix2& c = transform;
    const double det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
    const Matrix2 inv{{{c[1][1] / det, -c[0][1] / det}, {-c[1][0] / det, c[0][0] / det}}};
    return product(product(c, original(x)), inv);
}

DiracDecoupling dirac_decouple(double epsilon, double mu, int kappa) {
    DiracDecoupling d;
    d.epsilon = epsilon;
    d.mu = mu;
    d.kappa = kappa;
    d.nu = dirac_nu(mu, kappa);
    d.a = std::abs(epsilon) < 1.0 ? std::sqrt(1.0 - epsilon * epsilon) : 0.0;
    const double nu = d.nu;
    d.v1 = {LowPoly(0.0, 1.0), LowPoly(-nu * (nu + 1.0), 2.0 * epsilon * mu, epsilon * epsilon - 1.0), LowPoly(0.0),
            Interval::half_line(0.0)};
    d.v2 = {LowPoly(0.0, 1.0), LowPoly(-nu * (nu - 1.0), 2.0 * epsilon * mu, epsilon * epsilon - 1.0), LowPoly(0.0),
            Interval::half_line(0.0)};
    d.v2.endpoint_rules = {EndpointRule::FiniteKineticEnergy, EndpointRule::Auto};
    d.transform = {{{mu, nu - kappa}, {nu - kappa, mu}}};
    const double den = epsilon * kappa - nu;
    d.f1 = d.a * mu / den;
    d.f2 = kappa - nu;
    d.g1 = d.a * (kappa - nu) / den;
    d.g2 = mu;
    return d;
}

int dirac_kappa(double j, int sign) {
    const double k = j + 0.5;
    if (k < 1.0 || k != std::round(k) || sign == 0)
        fail(ErrorCode::InvalidParams, "j must be a positive half-integer and the sign nonzero");
    return sign > 0 ? int(k) : -int(k);
}

double dirac_energy(int n_r, int kappa, double mu) {
    const double nu = dirac_nu(mu, kappa);
    return 1.0 / std::sqrt(1.0 + std::pow(mu / (n_r + nu), 2));
}

DiracRadialPair dirac_radial(int n_r, int kappa, double mu, double beta) {
    if (n_r < 0 || (kappa > 0 && n_r == 0))
        fail(ErrorCode::LevelNotBound, "n_r must be >= 0, and >= 1 when kappa > 0");
    if (!(mu > 0.0)) fail(ErrorCode::InvalidParams, "mu must be positive");
    DiracRadialPair p;
    p.n_r = n_r;
    p.kappa = kappa;
    p.mu = mu;
    p.beta = beta;
    p.nu = dirac_nu(mu, kappa);
    p.epsilon = dirac_energy(n_r, kappa, mu);
    p.a = p.epsilon * mu / (n_r + p.nu);
    const DiracDecoupling d = dirac_decouple(p.epsilon, mu, kappa);
    p.f1 = d.f1;
    p.f2 = d.f2;
    p.g1 = d.g1;
    p.g2 = d.g2;
    const double nu = p.nu, a = p.a;
    const double den = p.epsilon * kappa - nu;
    p.Bn = a * std::pow(beta, 1.5) *
           std::exp(0.5 * (std::log((kappa - nu) * den) + log_factorial(n_r) - std::log(mu) - log_gamma(n_r + 2.0 * nu)));
    const double pref = p.Bn / (2.0 * nu * (kappa - nu));
    const double An = a * p.Bn / den;
    const int n = n_r;
    auto envelope = [](double xi, double power) { return std::exp(power * std::log(xi) - 0.5 * xi); };
    auto lower = [=](double xi) { return n == 0 ? 0.0 : ortho_eval(Family::Laguerre, n - 1, xi, 2.0 * nu + 1.0); };
    auto upper = [=](double xi) { return ortho_eval(Family::Laguerre, n, xi, 2.0 * nu - 1.0); };
    auto component = [=](double c1, double c2) {
        return [=](double x) {
            if (x <= 0.0) return 0.0;
            const double xi = 2.0 * a * x;
            const double e = envelope(xi, nu);
            if (e == 0.0) return 0.0;
            const double v = pref * e * (c1 * xi * lower(xi) + c2 * upper(xi)) / x;
            return std::isfinite(v) ? v : 0.0;
        };
    };
    p.f = component(p.f1, p.f2);
    p.g = component(p.g1, p.g2);
    p.v1 = [=](double x) {
        if (x <= 0.0 || n == 0) return 0.0;
        const double xi = 2.0 * a * x;
        return An * envelope(xi, nu + 1.0) * lower(xi);
    };
    p.v2 = [=](double x) {
        if (x <= 0.0) return 0.0;
        const double xi = 2.0 * a * x;
        return p.Bn * envelope(xi, nu) * upper(xi);
    };
    return p;
}

double dirac_system_residual(const DiracRadialPair& p, double x_lo, double x_hi) {
    const double h = 1e-5 * (x_hi - x_lo);
    auto deriv = [h](const RealFn& u, double x) {
        return (-u(x + 2 * h) + 8.0 * u(x + h) - 8.0 * u(x - h) + u(x - 2 * h)) / (12.0 * h);
    };
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = x_lo + (i + 1) * (x_hi - x_lo) / 51.0;
        const double f = p.f(x), g = p.g(x);
        const double a1 = deriv(p.f, x), a2 = (1.0 + p.kappa) * f / x, a3 = (1.0 + p.epsilon + p.mu / x) * g;
        const double b1 = deriv(p.g, x), b2 = (1.0 - p.kappa) * g / x, b3 = (1.0 - p.epsilon - p.mu / x) * f;
        worst = std::max({worst, std::abs(a1 + a2 - a3), std::abs(b1 + b2 - b3)});
        scale = std::max({scale, std::abs(a1) + std::abs(a2) + std::abs(a3), std::abs(b1) + std::abs(b2) + std::abs(b3)});
    }
    if (scale == 0.0) fail(ErrorCode::DomainError, "radial pair vanishes across the window");
    return worst / scale;
}

double klein_gordon_energy(int n_r, int l, double mu) {
    if (!(mu < l + 0.5)) fail(ErrorCode::SupercriticalCharge, "mu must be below l + 1/2");
    const double nu = -0.5 + std::sqrt(std::pow(l + 0.5, 2) - mu * mu);
    return 1.0 / std::sqrt(1.0 + std::pow(mu / (n_r + nu + 1.0), 2));
}

FineStructureExpansion fine_structure_expansion_check(FineStructureModel model, int n_r, int l_or_kappa,
                                                      const std::vector<double>& mu_samples) {
    if (mu_samples.size() < 2) fail(ErrorCode::InvalidParams, "need at least two mu samples");
    for (std::size_t i = 0; i < mu_samples.size(); ++i) {
        const double m = mu_samples[i];
        if (!(m > 0.0 && m <= 0.2) || (i > 0 && !(m < mu_samples[i - 1])))
            fail(ErrorCode::InvalidParams, "mu samples must be decreasing inside (0, 0.2]");
    }
    // eps - 1 in closed form, free of the cancellation in 1/sqrt(1 + x) - 1.
    std::function<double(double)> eps_minus_one;
    double j_half = 0.0;
    FineStructureExpansion out;
    if (model == FineStructureModel::RelSchrodinger) {
        const int l = l_or_kappa;
        if (l < 0 || n_r < 0) fail(ErrorCode::InvalidParams, "need l >= 0 and n_r >= 0");
        out.n = n_r + l + 1;
        j_half = l + 0.5;
        eps_minus_one = [=](double mu) {
            const double nu = -0.5 + std::sqrt(std::pow(l + 0.5, 2) - mu * mu);
            return inv_sqrt_minus_one(std::pow(mu / (n_r + nu + 1.0), 2));
        };
    } else {
        const int kappa = l_or_kappa;
        if (kappa == 0 || n_r < 0 || (kappa > 0 && n_r == 0))
            fail(ErrorCode::InvalidParams, "need kappa != 0, n_r >= 0, and n_r >= 1 when kappa > 0");
        out.n = n_r + std::abs(kappa);
        j_half = std::abs(kappa);
        eps_minus_one = [=](double mu) {
            const double nu = std::sqrt(double(kappa) * kappa - mu * mu);
            return inv_sqrt_minus_one(std::pow(mu / (n_r + nu), 2));
        };
    }
    const double n = out.n;
    out.expected_c2 = -1.0 / (2.0 * n * n);
    out.expected_c4 = -(n / j_half - 0.75) / (2.0 * std::pow(n, 4));

    const double d0 = eps_minus_one(0.0);
    out.c0 = 1.0 + d0;
    std::vector<double> t, g;
    for (double mu : mu_samples) {
        t.push_back(mu * mu);
        g.push_back((eps_minus_one(mu) - d0) / (mu * mu));
    }
    out.c2 = stable_extrapolation(t, g, "mu^2");
    std::vector<double> h;
    for (std::size_t i = 0; i < t.size(); ++i) h.push_back((g[i] - out.c2) / t[i]);
    out.c4 = stable_extrapolation(t, h, "mu^4");
    return out;
}

} // namespace nuspectra
