#include "nuspectra/poly_kernel.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "nuspectra/errors.hpp"

namespace nuspectra {

namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && std::abs(v - std::round(v)) <= 1e-14 * (1.0 + std::abs(v)); }

bool jacobi_recurrence_singular(int n, double a, double b) {
    const double ab = a + b;
    for (int k = 1; k < n; ++k) {
        for (double d : {ab + 2.0 * k, ab + 2.0 * k + 1.0, ab + 2.0 * k + 2.0, ab + k + 1.0})
            if (std::abs(d) < 1e-13) return true;
    }
    return false;
}

double jacobi_via_2f1(int n, double x, double a, double b) {
    if (is_nonpositive_integer(a + 1.0)) fail(ErrorCode::DomainError, "Jacobi parameter a + 1 is a nonpositive integer");
    return pochhammer(a + 1.0, n) / std::exp(log_factorial(n)) *
           hyp2f1_terminating(n, n + a + b + 1.0, a + 1.0, 0.5 * (1.0 - x));
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) fail(ErrorCode::DomainError, "log_gamma needs a positive argument");
    return std::lgamma(x);
}

double beta_value(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) fail(ErrorCode::DomainError, "beta_value needs positive arguments");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}
double gamma_fn(double x) { return std::tgamma(x); }
double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double pochhammer(double a, int k) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + i;
    return p;
}

ClassicalForm classical_form(Family f, double a, double b) {
    ClassicalForm cf;
    switch (f) {
    case Family::Jacobi:
        cf.sigma = LowPoly(1.0, 0.0, -1.0);
        cf.tau = LowPoly(b - a, -(a + b + 2.0));
        cf.rho.factors = {{-1.0, b}, {1.0, a}};
        cf.support = Interval::open(-1.0, 1.0);
        break;
    case Family::Laguerre:
        cf.sigma = LowPoly(0.0, 1.0);
        cf.tau = LowPoly(1.0 + a, -1.0);
        cf.rho.exponent = LowPoly(0.0, -1.0);
        cf.rho.factors = {{0.0, a}};
        cf.support = Interval::half_line(0.0);
        break;
    case Family::Hermite:
        cf.sigma = LowPoly(1.0);
        cf.tau = LowPoly(0.0, -2.0);
        cf.rho.exponent = LowPoly(0.0, 0.0, -1.0);
        cf.support = Interval::whole_line();
        break;
    }
    return cf;
}

double classical_lambda(Family f, int n, double a, double b) {
    switch (f) {
    case Family::Jacobi: return n * (a + b + n + 1.0);
    case Family::Laguerre: return n;
    case Family::Hermite: return 2.0 * n;
    }
    return 0.0;
}

double rodrigues_constant(Family f, int n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    switch (f) {
    case Family::Jacobi: return sign / (std::ldexp(1.0, n) * std::exp(log_factorial(n)));
    case Family::Laguerre: return 1.0 / std::exp(log_factorial(n));
    case Family::Hermite: return sign;
    }
    return 0.0;
}

double leading_coefficient(Family f, int n, double a, double b) {
    switch (f) {
    case Family::Jacobi:
        return pochhammer(a + b + n + 1.0, n) / (std::ldexp(1.0, n) * std::exp(log_factorial(n)));
    case Family::Laguerre: return ((n % 2 == 0) ? 1.0 : -1.0) / std::exp(log_factorial(n));
    case Family::Hermite: return std::ldexp(1.0, n);
    }
    return 0.0;
}

RecurrenceCoeffs recurrence(Family f, int n, double a, double b) {
    const double dn = n;
    switch (f) {
    case Family::Jacobi: {
        const double ab = a + b;
        const double s = ab + 2.0 * dn;
        RecurrenceCoeffs r{};
        r.alpha = 2.0 * (dn + 1.0) * (ab + dn + 1.0) / ((s + 1.0) * (s + 2.0));
        // n = 0 with a + b = 0 is a removable 0/0
        r.beta = (n == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        r.gamma = (n == 0) ? 0.0 : 2.0 * (a + dn) * (b + dn) / (s * (s + 1.0));
        return r;
    }
    case Family::Laguerre: return {-(dn + 1.0), a + 2.0 * dn + 1.0, -(a + dn)};
    case Family::Hermite: return {0.5, 0.0, dn};
    }
    return {};
}

std::vector<double> ortho_eval_all(Family f, int n, double x, double a, double b) {
    if (n < 0) fail(ErrorCode::DomainError, "negative degree");
    std::vector<double> y(static_cast<std::size_t>(n) + 1);
    if (f == Family::Jacobi && jacobi_recurrence_singular(n, a, b)) {
        for (int k = 0; k <= n; ++k) y[k] = jacobi_via_2f1(k, x, a, b);
        return y;
    }
    y[0] = 1.0;
    if (n == 0) return y;
    switch (f) {
    case Family::Jacobi: y[1] = 0.5 * ((a + b + 2.0) * x + a - b); break;
    case Family::Laguerre: y[1] = 1.0 + a - x; break;
    case Family::Hermite: y[1] = 2.0 * x; break;
    }
    for (int k = 1; k < n; ++k) {
        const RecurrenceCoeffs r = recurrence(f, k, a, b);
        y[k + 1] = ((x - r.beta) * y[k] - r.gamma * y[k - 1]) / r.alpha;
    }
    return y;
}

double ortho_eval(Family f, int n, double x, double a, double b) { return ortho_eval_all(f, n, x, a, b).back(); }

double norm_squared(Family f, int n, double a, double b) {
    switch (f) {
    case Family::Jacobi: {
        if (!(a > -1.0 && b > -1.0)) fail(ErrorCode::DomainError, "Jacobi norm needs a, b > -1");
        const double ab = a + b;
        double lg;
        if (n == 0) {
            lg = (ab + 1.0) * std::numbers::ln2 + log_gamma(a + 1.0) + log_gamma(b + 1.0) - log_gamma(ab + 2.0);
        } else {
            lg = (ab + 1.0) * std::numbers::ln2 + log_gamma(a + n + 1.0) + log_gamma(b + n + 1.0) - log_factorial(n) -
                 std::log(ab + 2.0 * n + 1.0) - log_gamma(ab + n + 1.0);
        }
        return std::exp(lg);
    }
    case Family::Laguerre:
        if (!(a > -1.0)) fail(ErrorCode::DomainError, "Laguerre norm needs a > -1");
        return std::exp(log_gamma(a + n + 1.0) - log_factorial(n));
    case Family::Hermite:
        return std::exp(n * std::numbers::ln2 + log_factorial(n)) * std::sqrt(std::numbers::pi);
    }
    return 0.0;
}

double hyp2f1_terminating(int n, double b, double c, double x) {
    if (n < 0) fail(ErrorCode::DomainError, "negative termination order");
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= n; ++k) {
        const double ck = c + k - 1.0;
        if (std::abs(ck) < 1e-14) fail(ErrorCode::PoleAtC, "c is a nonpositive integer above -n");
        term *= (-n + k - 1.0) * (b + k - 1.0) / (ck * k) * x;
        sum += term;
    }
    return sum;
}

double hyp1f1_terminating(int n, double c, double x) {
    if (n < 0) fail(ErrorCode::DomainError, "negative termination order");
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= n; ++k) {
        const double ck = c + k - 1.0;
        if (std::abs(ck) < 1e-14) fail(ErrorCode::PoleAtC, "c is a nonpositive integer above -n");
        term *= (-n + k - 1.0) / (ck * k) * x;
        sum += term;
    }
    return sum;
}

double laguerre_product_integral(int n, int m, double s, double a, double b) {
    if (n < 0 || m < 0) fail(ErrorCode::DomainError, "negative degree");
    if (!(b > -1.0)) fail(ErrorCode::DomainError, "Laguerre parameter must exceed -1");
    if (n < m) return laguerre_product_integral(m, n, a + s - b, b, a);
    if (!(a + s + 1.0 > 0.0)) fail(ErrorCode::DivergentIntegral, "a + s + 1 must be positive");
    const int d = n - m;
    // Gamma(s+1)/Gamma(s+1-d) as a falling factorial, finite across the poles of both
    double ratio = 1.0;
    for (int i = 0; i < d; ++i) ratio *= s - i;
    const double pre = std::exp(log_gamma(a + s + 1.0) + log_gamma(b + m + 1.0) - log_factorial(m) - log_factorial(d) -
                                log_gamma(b + 1.0));
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= m; ++k) {
        term *= (-m + k - 1.0) * (s + k) * (b - a - s + k - 1.0) / ((b + k) * (d + k) * k);
        sum += term;
    }
    return ((d % 2 == 0) ? 1.0 : -1.0) * pre * ratio * sum;
}

double laguerre_I1(int n, double a) {
    return (a + 2.0 * n + 1.0) * std::exp(log_gamma(a + n + 1.0) - log_factorial(n));
}

double laguerre_Im1(int m, double delta) {
    if (!(delta > 0.0)) fail(ErrorCode::DivergentIntegral, "delta must be positive");
    return std::exp(log_gamma(delta + m + 1.0) - log_factorial(m)) / delta;
}

} // namespace nuspectra
