#include "nuspectra/nu_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nuspectra/errors.hpp"

namespace nuspectra {

namespace {

constexpr double kZeroTol = 1e-12;
constexpr double kSquareTol = 1e-10;
constexpr double kExponentTol = 1e-10;

LowPoly half_drift(const NuEquation& eq) { return 0.5 * (eq.sigma.derivative() - eq.tau_tilde); }

LowPoly q_poly(const NuEquation& eq) {
    const LowPoly h = half_drift(eq);
    return multiply(h, h) - eq.sigma_tilde;
}

bool near(double a, double b, double scale) { return std::abs(a - b) <= kSquareTol * std::max(1.0, scale); }

bool same_poly(const LowPoly& a, const LowPoly& b, double scale) {
    for (int i = 0; i < 3; ++i)
        if (!near(a.c[i], b.c[i], scale)) return false;
    return true;
}

bool same_branch(const NuBranch& a, const NuBranch& b) {
    const double s = std::max({std::abs(a.k), std::abs(b.k), a.pi.max_abs(), b.pi.max_abs()});
    return near(a.k, b.k, s) && same_poly(a.pi, b.pi, s);
}

} // namespace

void validate(const NuEquation& eq) {
    const int ds = eq.sigma.degree();
    if (ds < 0) fail(ErrorCode::InvalidEquation, "sigma is identically zero");
    if (eq.tau_tilde.c[2] != 0.0) fail(ErrorCode::InvalidEquation, "tau_tilde must have degree <= 1");
    if (!(eq.domain.lower < eq.domain.upper)) fail(ErrorCode::InvalidEquation, "empty domain");
    for (double r : real_roots(eq.sigma)) {
        if (eq.domain.contains_interior(r))
            fail(ErrorCode::InvalidEquation, "sigma vanishes inside the domain at " + std::to_string(r));
    }
}

double ExpPowerProduct::log_abs(double x) const {
    double s = exponent(x);
    for (const auto& f : factors) s += f.power * std::log(std::abs(x - f.root));
    return s;
}

double ExpPowerProduct::operator()(double x) const { return std::exp(log_abs(x)); }

double ExpPowerProduct::log_derivative(double x) const {
    double s = exponent.d1(x);
    for (const auto& f : factors) s += f.power / (x - f.root);
    return s;
}

double ExpPowerProduct::power_at(double root, double tol) const {
    double p = 0.0;
    for (const auto& f : factors)
        if (std::abs(f.root - root) <= tol * (1.0 + std::abs(root))) p += f.power;
    return p;
}

ExpPowerProduct integrate_log_derivative(const LowPoly& num, const LowPoly& sigma) {
    if (num.c[2] != 0.0) fail(ErrorCode::UnsupportedForm, "log-derivative numerator must have degree <= 1");
    ExpPowerProduct out;
    switch (sigma.degree()) {
    case 0: {
        const double s0 = sigma.c[0];
        out.exponent = LowPoly(0.0, num.c[0] / s0, num.c[1] / (2.0 * s0));
        break;
    }
    case 1: {
        const double s1 = sigma.c[1];
        const double r = -sigma.c[0] / s1;
        out.exponent = LowPoly(0.0, num.c[1] / s1, 0.0);
        const double p = num(r) / s1;
        if (p != 0.0) out.factors.push_back({r, p});
        break;
    }
    case 2: {
        const double s2 = sigma.c[2];
        const auto roots = real_roots(sigma);
        if (roots.size() != 2) fail(ErrorCode::IntegrationFailure, "sigma has no real roots");
        const double r1 = roots[0], r2 = roots[1];
        const double width = std::max(1.0, std::max(std::abs(r1), std::abs(r2)));
        if (std::abs(r1 - r2) <= kZeroTol * width) {
            // num/(s2 (x-r)^2) stays in the closed form only without the double pole
            if (std::abs(num(r1)) > kSquareTol * std::max(1.0, num.max_abs()))
                fail(ErrorCode::IntegrationFailure, "double root of sigma produces an exponential pole");
            out.factors.push_back({r1, num.c[1] / s2});
            break;
        }
        const double a = num(r1) / (s2 * (r1 - r2));
        const double b = num(r2) / (s2 * (r2 - r1));
        if (a != 0.0) out.factors.push_back({r1, a});
        if (b != 0.0) out.factors.push_back({r2, b});
        break;
    }
    default:
        fail(ErrorCode::InvalidEquation, "sigma is identically zero");
    }
    return out;
}

std::vector<double> k_candidates(const NuEquation& eq) {
    validate(eq);
    const LowPoly& s = eq.sigma;
    const LowPoly q = q_poly(eq);
    // p = q + k sigma is a perfect square iff p'(0)^2 = 2 p'' p(0)
    const double a = s.d1() * s.d1() - 2.0 * s.d2() * s.at0();
    const double b = q.d1() * s.d1() - s.d2() * q.at0() - s.at0() * q.d2();
    const double c = q.d1() * q.d1() - 2.0 * q.d2() * q.at0();

    const double sscale = s.max_abs();
    const double qscale = std::max(q.max_abs(), 1e-300);
    const bool a_zero = std::abs(a) <= kZeroTol * sscale * sscale;
    if (a_zero) {
        if (std::abs(b) <= kZeroTol * sscale * qscale) fail(ErrorCode::DegenerateK, "k equation has no k-dependence");
        return {-c / (2.0 * b)};
    }
    double d = b * b - a * c;
    if (d < 0.0 && -d <= kZeroTol * (b * b + std::abs(a * c))) d = 0.0;
    if (d < 0.0) {
        std::ostringstream os;
        os << "discriminant " << d << " < 0";
        fail(ErrorCode::NoRealK, os.str());
    }
    if (d == 0.0) return {-b / a};
    // larger-magnitude root first, the other from Vieta to avoid cancellation
    const double big = (-b - std::copysign(std::sqrt(d), b)) / a;
    const double other = (big != 0.0) ? c / (a * big) : (-b + std::copysign(std::sqrt(d), b)) / a;
    std::vector<double> ks{big, other};
    std::sort(ks.begin(), ks.end());
    if (std::abs(ks[0] - ks[1]) <= kZeroTol * std::max(std::abs(ks[0]), std::abs(ks[1]))) ks.pop_back();
    return ks;
}

std::array<LowPoly, 2> pi_branches(const NuEquation& eq, double k) {
    const LowPoly h = half_drift(eq);
    const LowPoly p = q_poly(eq) + k * eq.sigma;
    const double scale = std::max({q_poly(eq).max_abs(), std::abs(k) * eq.sigma.max_abs(), 1e-300});
    const double c0 = p.c[0], c1 = p.c[1], c2 = p.c[2];
    if (c0 < -kSquareTol * scale || c2 < -kSquareTol * scale)
        fail(ErrorCode::NotPerfectSquare, "q + k sigma has a negative end coefficient");
    // Take the square root of the larger end coefficient and divide for the
    // other one; the smaller end is where the cancellation would happen.
    double r0 = 0.0, r1 = 0.0, defect = 0.0;
    if (std::max(c0, 0.0) >= std::max(c2, 0.0)) {
        r0 = std::sqrt(std::max(c0, 0.0));
        r1 = r0 > 0.0 ? c1 / (2.0 * r0) : 0.0;
        defect = r0 > 0.0 ? c2 - r1 * r1 : std::abs(c1) + std::abs(c2);
    } else {
        r1 = std::sqrt(c2);
        r0 = c1 / (2.0 * r1);
        defect = c0 - r0 * r0;
    }
    if (std::abs(defect) > kSquareTol * scale) {
        std::ostringstream os;
        os << "q + k sigma misses a perfect square by " << defect;
        fail(ErrorCode::NotPerfectSquare, os.str());
    }
    if (r1 < 0.0 || (r1 == 0.0 && r0 < 0.0)) {
        r0 = -r0;
        r1 = -r1;
    }
    const LowPoly root(r0, r1);
    return {h + root, h - root};
}

NuBranch make_branch(const NuEquation& eq, double k, const LowPoly& pi) {
    NuBranch b;
    b.k = k;
    b.pi = pi;
    b.tau = eq.tau_tilde + 2.0 * pi;
    b.lambda = k + pi.c[1];
    b.phi = integrate_log_derivative(pi, eq.sigma);
    b.rho = integrate_log_derivative(b.tau - eq.sigma.derivative(), eq.sigma);
    return b;
}

std::vector<NuBranch> all_branches(const NuEquation& eq) {
    std::vector<NuBranch> out;
    for (double k : k_candidates(eq)) {
        for (const LowPoly& pi : pi_branches(eq, k)) {
            NuBranch b = make_branch(eq, k, pi);
            const bool dup = std::any_of(out.begin(), out.end(), [&](const NuBranch& o) { return same_branch(o, b); });
            if (!dup) out.push_back(std::move(b));
        }
    }
    return out;
}

double reduction_residual(const NuEquation& eq, double k, const LowPoly& pi) {
    const LowPoly r = multiply(pi, pi) + multiply(eq.tau_tilde - eq.sigma.derivative(), pi) + eq.sigma_tilde - k * eq.sigma;
    return r.max_abs();
}

std::string branch_rejection(const NuEquation& eq, const NuBranch& b) {
    const double xs = eq.domain.interior_point();
    const double sgn = eq.sigma(xs) > 0.0 ? 1.0 : -1.0;
    const double slope = b.tau.c[1];
    const double tscale = std::max(1.0, b.tau.max_abs());
    // sigma < 0 flips the orientation of the whole equation
    if (!(sgn * slope < -kZeroTol * tscale)) return "tau' has the wrong sign";
    if (eq.domain.bounded()) {
        const double root = -b.tau.c[0] / slope;
        if (!eq.domain.contains_interior(root)) return "zero of tau outside the domain";
    }
    const std::array<double, 2> ends{eq.domain.lower, eq.domain.upper};
    const std::array<bool, 2> finite{eq.domain.lower_finite(), eq.domain.upper_finite()};
    for (int i = 0; i < 2; ++i) {
        if (!finite[i]) continue;
        const double e = ends[i];
        const double p = b.phi.power_at(e);
        EndpointRule rule = eq.endpoint_rules[i];
        if (rule == EndpointRule::Auto) {
            const bool sigma_zero = std::abs(eq.sigma(e)) <= kSquareTol * std::max(1.0, eq.sigma.max_abs());
            rule = sigma_zero ? EndpointRule::Vanishing : EndpointRule::Bounded;
        }
        bool ok = true;
        switch (rule) {
        case EndpointRule::Bounded: ok = p >= -kExponentTol; break;
        case EndpointRule::Vanishing: ok = p > kExponentTol; break;
        case EndpointRule::FiniteKineticEnergy: ok = p > 0.5 + kExponentTol; break;
        case EndpointRule::Analytic:
            ok = p >= -kExponentTol && std::abs(p - std::round(p)) <= kExponentTol;
            break;
        case EndpointRule::Auto: break;
        }
        if (!ok) {
            std::ostringstream os;
            os << "phi exponent " << p << " at endpoint " << e << " violates the boundary rule";
            return os.str();
        }
    }
    return {};
}

NuBranch select_bound_state_branch(const NuEquation& eq, const std::vector<NuBranch>& candidates) {
    std::vector<const NuBranch*> ok;
    for (const auto& b : candidates) {
        if (!branch_rejection(eq, b).empty()) continue;
        const bool dup = std::any_of(ok.begin(), ok.end(), [&](const NuBranch* o) { return same_branch(*o, b); });
        if (!dup) ok.push_back(&b);
    }
    if (ok.empty()) fail(ErrorCode::NoPhysicalBranch, "no (k, pi) pair satisfies the bound-state conditions");
    if (ok.size() > 1) fail(ErrorCode::AmbiguousBranch, std::to_string(ok.size()) + " branches qualify");
    return *ok.front();
}

NuBranch select_bound_state_branch(const NuEquation& eq) { return select_bound_state_branch(eq, all_branches(eq)); }

double quantized_lambda(const LowPoly& tau, const LowPoly& sigma, int n) {
    const double dn = static_cast<double>(n);
    return -dn * tau.c[1] - 0.5 * dn * (dn - 1.0) * sigma.d2();
}

Polynomial rodrigues_polynomial(const LowPoly& sigma, const ExpPowerProduct& rho, int n, double Bn) {
    if (n < 0) fail(ErrorCode::DomainError, "negative degree");
    // the n-th derivative of sigma^n rho is N / Pi^n * rho, Pi the product of rho's roots
    Polynomial Pi(std::vector<double>{1.0});
    for (const auto& f : rho.factors) Pi = Pi * Polynomial(std::vector<double>{-f.root, 1.0});
    Polynomial L = Polynomial(rho.exponent.derivative()) * Pi;
    for (std::size_t i = 0; i < rho.factors.size(); ++i) {
        Polynomial others(std::vector<double>{rho.factors[i].power});
        for (std::size_t j = 0; j < rho.factors.size(); ++j)
            if (j != i) others = others * Polynomial(std::vector<double>{-rho.factors[j].root, 1.0});
        L = L + others;
    }
    const Polynomial dPi = Pi.derivative();
    Polynomial N(std::vector<double>{1.0});
    for (int i = 0; i < n; ++i) N = N * Polynomial(sigma);
    for (int m = 0; m < n; ++m) N = N.derivative() * Pi - static_cast<double>(m) * (N * dPi) + N * L;

    Polynomial Pin(std::vector<double>{1.0});
    for (int i = 0; i < n; ++i) Pin = Pin * Pi;
    auto [quot, rem] = Polynomial::divide(N, Pin);
    const double scale = std::max(N.max_abs(), 1e-300);
    if (rem.max_abs() > 1e-8 * scale) fail(ErrorCode::UnsupportedForm, "Rodrigues derivative is not polynomial");
    // strip roundoff above degree n
    std::vector<double> c = quot.coeffs();
    const double qscale = std::max(quot.max_abs(), 1e-300);
    while (static_cast<int>(c.size()) > n + 1) {
        if (std::abs(c.back()) > 1e-8 * qscale) fail(ErrorCode::UnsupportedForm, "Rodrigues result exceeds degree n");
        c.pop_back();
    }
    return Bn * Polynomial(std::move(c));
}

} // namespace nuspectra
