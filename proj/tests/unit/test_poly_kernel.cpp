#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nuspectra/errors.hpp"
#include "nuspectra/numeric_oracle.hpp"
#include "nuspectra/poly_kernel.hpp"

using namespace nuspectra;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct FamilyCase {
    Family f;
    double a, b;
};

const FamilyCase kFamilies[] = {{Family::Hermite, 0, 0},   {Family::Laguerre, 0, 0}, {Family::Laguerre, 1, 0},
                                {Family::Laguerre, 2.5, 0}, {Family::Jacobi, 0, 0},   {Family::Jacobi, 0.5, 1.5},
                                {Family::Jacobi, 1, 1},     {Family::Jacobi, -0.5, 0.5}};

double weight(const FamilyCase& c, double x) { return classical_form(c.f, c.a, c.b).rho(x); }

} // namespace

TEST(OrthoEval, Examples) {
    EXPECT_DOUBLE_EQ(ortho_eval(Family::Hermite, 2, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(ortho_eval(Family::Laguerre, 1, 0.0, 0.0), 1.0);
}

TEST(OrthoEval, JacobiAgreesWithRodrigues) {
    const ClassicalForm cf = classical_form(Family::Jacobi, 1.0, 1.0);
    const Polynomial y = rodrigues_polynomial(cf.sigma, cf.rho, 2, rodrigues_constant(Family::Jacobi, 2));
    EXPECT_NEAR(ortho_eval(Family::Jacobi, 2, 0.0, 1.0, 1.0), y(0.0), 1e-13);
    EXPECT_NEAR(y(0.0), -0.75, 1e-13);
}

TEST(NormSquared, Examples) {
    EXPECT_NEAR(norm_squared(Family::Hermite, 0), std::sqrt(std::numbers::pi), 1e-14);
    EXPECT_NEAR(norm_squared(Family::Laguerre, 3, 0.0), 1.0, 1e-14);
    const double q = quadrature([](double x) { return x * x; }, Interval::open(-1.0, 1.0)).value;
    EXPECT_NEAR(norm_squared(Family::Jacobi, 1, 0.0, 0.0), q, 1e-13);
}

TEST(OrthoEval, OrthogonalityAgainstQuadrature) {
    for (const auto& c : kFamilies) {
        if (c.a <= -1.0 || c.b <= -1.0 || (c.f == Family::Jacobi && (c.a < 0 || c.b < 0))) continue;
        const Interval support = classical_form(c.f, c.a, c.b).support;
        for (int n = 0; n <= 8; ++n) {
            for (int m = 0; m <= n; ++m) {
                const double v = quadrature(
                                     [&](double x) { return ortho_eval(c.f, n, x, c.a, c.b) * ortho_eval(c.f, m, x, c.a, c.b) * weight(c, x); },
                                     support)
                                     .value;
                const double dn = std::sqrt(norm_squared(c.f, n, c.a, c.b)), dm = std::sqrt(norm_squared(c.f, m, c.a, c.b));
                if (n == m)
                    EXPECT_LT(rel(v, dn * dn), 1e-8) << "n=" << n;
                else
                    EXPECT_LT(std::abs(v), 1e-8 * dn * dm) << "n=" << n << " m=" << m;
            }
        }
    }
}

TEST(OrthoEval, RecurrenceConsistency) {
    for (const auto& c : kFamilies) {
        for (int n = 1; n <= 10; ++n) {
            const RecurrenceCoeffs r = recurrence(c.f, n, c.a, c.b);
            for (int i = 0; i < 50; ++i) {
                const double x = c.f == Family::Laguerre ? 0.4 * i : -0.98 + 1.96 * i / 49.0;
                const double yn = ortho_eval(c.f, n, x, c.a, c.b);
                const double lhs = x * yn;
                const double t1 = r.alpha * ortho_eval(c.f, n + 1, x, c.a, c.b), t2 = r.beta * yn,
                             t3 = r.gamma * ortho_eval(c.f, n - 1, x, c.a, c.b);
                const double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
                EXPECT_LT(std::abs(lhs - (t1 + t2 + t3)), 1e-10 * scale);
            }
        }
    }
}

TEST(OrthoEval, GammaRecurrenceMatchesNorms) {
    for (const auto& c : kFamilies) {
        if (c.f == Family::Jacobi && (c.a < 0 || c.b < 0)) continue;
        for (int n = 1; n <= 8; ++n) {
            const double g = recurrence(c.f, n, c.a, c.b).gamma;
            const double want = recurrence(c.f, n - 1, c.a, c.b).alpha * norm_squared(c.f, n, c.a, c.b) /
                                norm_squared(c.f, n - 1, c.a, c.b);
            EXPECT_LT(rel(g, want), 1e-12);
        }
    }
}

TEST(OrthoEval, DifferentialEquation) {
    for (const auto& c : kFamilies) {
        const ClassicalForm cf = classical_form(c.f, c.a, c.b);
        for (int n = 0; n <= 6; ++n) {
            const Polynomial y = rodrigues_polynomial(cf.sigma, cf.rho, n, rodrigues_constant(c.f, n));
            const Polynomial d1 = y.derivative(), d2 = d1.derivative();
            const double lambda = classical_lambda(c.f, n, c.a, c.b);
            for (int i = 0; i < 20; ++i) {
                const double x = c.f == Family::Laguerre ? 0.5 * i : -0.95 + 0.1 * i;
                const double t1 = cf.sigma(x) * d2(x), t2 = cf.tau(x) * d1(x), t3 = lambda * y(x);
                const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
                EXPECT_LT(std::abs(t1 + t2 + t3), 1e-9 * scale);
            }
        }
    }
}

TEST(Hyp2F1, Terminating) {
    EXPECT_DOUBLE_EQ(hyp2f1_terminating(0, 3.7, 1.2, 0.4), 1.0);
    EXPECT_DOUBLE_EQ(hyp2f1_terminating(1, 3.0, 2.0, 0.5), 0.25);
    // n = 1, alpha = kappa = 1: b = 2 alpha + 2 kappa + n + 1 = 6, c = 3
    const double v = hyp2f1_terminating(1, 6.0, 3.0, 0.3);
    const ExpPowerProduct rho{LowPoly(0.0), {{0.0, 2.0}, {1.0, 2.0}}};
    const Polynomial y = rodrigues_polynomial(LowPoly(0.0, 1.0, -1.0), rho, 1, 1.0);
    EXPECT_NEAR(v, y(0.3) / y(0.0), 1e-14);
}

TEST(Hyp2F1, PoleAtC) {
    try {
        (void)hyp2f1_terminating(3, 1.0, -1.0, 0.2);
        FAIL() << "expected PoleAtC";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PoleAtC);
    }
}

TEST(Hyp1F1, Terminating) {
    EXPECT_DOUBLE_EQ(hyp1f1_terminating(0, 2.0, 5.0), 1.0);
    EXPECT_DOUBLE_EQ(hyp1f1_terminating(1, 2.0, 1.0), 0.5);
    const double link = ortho_eval(Family::Laguerre, 2, 0.7, 1.0) * std::exp(log_factorial(2) + log_gamma(2.0) - log_gamma(4.0));
    EXPECT_NEAR(hyp1f1_terminating(2, 2.0, 0.7), link, 1e-14);
}

TEST(Hypergeometric, LinksToFamilies) {
    for (int n = 0; n <= 10; ++n) {
        for (double x : {0.1, 0.8, 2.5, 6.0}) {
            const double a = 1.5;
            const double lag = ortho_eval(Family::Laguerre, n, x, a);
            const double f = std::exp(log_gamma(a + n + 1.0) - log_factorial(n) - log_gamma(a + 1.0)) * hyp1f1_terminating(n, a + 1.0, x);
            EXPECT_LT(std::abs(lag - f), 1e-12 * std::max(1.0, std::abs(lag)));
        }
        for (double x : {-0.9, -0.2, 0.3, 0.95}) {
            const double a = 0.5, b = 1.5;
            const double jac = ortho_eval(Family::Jacobi, n, x, a, b);
            const double pre = std::exp(log_gamma(a + n + 1.0) - log_factorial(n) - log_gamma(a + 1.0));
            const double f = pre * hyp2f1_terminating(n, n + a + b + 1.0, a + 1.0, 0.5 * (1.0 - x));
            // the alternating sum loses digits; flipping the argument sums the absolute terms
            const double terms = pre * hyp2f1_terminating(n, n + a + b + 1.0, a + 1.0, -0.5 * (1.0 - x));
            EXPECT_LT(std::abs(jac - f), 1e-13 * std::max(1.0, terms));
        }
    }
}

TEST(GammaBeta, Examples) {
    EXPECT_NEAR(gamma_fn(5.0), 24.0, 24.0 * 1e-14);
    EXPECT_NEAR(beta_value(1.0, 1.0), 1.0, 1e-14);
    const double q = quadrature([](double t) { return std::pow(t, 1.5) * std::pow(1.0 - t, 2.5); }, Interval::open(0.0, 1.0)).value;
    EXPECT_LT(rel(beta_value(2.5, 3.5), q), 1e-12);
    EXPECT_LT(rel(beta_value(2.5, 3.5), 0.036815538909255389513), 1e-13);
}

TEST(GammaBeta, Accuracy) {
    for (double x = 0.5; x <= 200.0; x *= 1.37) EXPECT_LT(rel(log_gamma(x), std::lgamma(x)), 1e-13) << x;
    try {
        (void)log_gamma(0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainError);
    }
}

TEST(LaguerreProduct, Examples) {
    EXPECT_NEAR(laguerre_product_integral(0, 0, 0, 0.0, 0.0), 1.0, 1e-14);
    const double a = 1.5;
    const double sol20 = (a + 5.0) * std::exp(log_gamma(a + 3.0) - log_factorial(2));
    EXPECT_LT(rel(laguerre_product_integral(2, 2, 1, a, a), sol20), 1e-13);
    EXPECT_LT(rel(laguerre_I1(2, a), sol20), 1e-13);
    const double q = quadrature(
                         [](double x) {
                             return std::exp(-x) * std::pow(x, 1.5) * ortho_eval(Family::Laguerre, 3, x, 0.5) *
                                    ortho_eval(Family::Laguerre, 2, x, 1.0);
                         },
                         Interval::half_line(0.0))
                         .value;
    const double j = laguerre_product_integral(3, 2, 1, 0.5, 1.0);
    EXPECT_LT(rel(j, q), 1e-10);
    EXPECT_LT(rel(j, -5.8158641982837244646), 1e-12);
}

TEST(LaguerreProduct, Divergent) {
    try {
        (void)laguerre_product_integral(1, 1, -1, 0.0, 0.0);
        FAIL() << "expected DivergentIntegral";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DivergentIntegral);
    }
}

TEST(LaguerreProduct, ImOneSpecialization) {
    for (int m = 0; m <= 4; ++m) {
        for (double d : {0.5, 1.0, 2.5}) {
            const double want = std::exp(log_gamma(d + m + 1.0) - log_factorial(m)) / d;
            EXPECT_LT(rel(laguerre_Im1(m, d), want), 1e-13);
            EXPECT_LT(rel(laguerre_product_integral(m, m, -1, d, d), want), 1e-12);
        }
    }
}
