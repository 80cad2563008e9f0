#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nuspectra/catalog.hpp"
#include "nuspectra/errors.hpp"
#include "nuspectra/numeric_oracle.hpp"
#include "nuspectra/poly_kernel.hpp"

using namespace nuspectra;

TEST(FdEigen, HarmonicWell) {
    const FdResult r = fd_eigen([](double x) { return x * x; }, {-10.0, 10.0, 2001}, 3);
    ASSERT_EQ(r.eigenvalues.size(), 3u);
    for (int n = 0; n < 3; ++n) EXPECT_NEAR(r.eigenvalues[n], 2.0 * n + 1.0, 1e-5);
    EXPECT_TRUE(std::isfinite(r.convergence_estimate));
}

TEST(FdEigen, CoulombRadial) {
    const FdResult r = fd_eigen([](double x) { return -2.0 / x; }, {1e-6, 200.0, 8001}, 2);
    EXPECT_NEAR(r.eigenvalues[0], -1.0, 2e-3);
    EXPECT_NEAR(r.eigenvalues[1], -0.25, 2e-3);
}

TEST(FdEigen, SquareWell) {
    const FdResult r = fd_eigen([](double) { return 0.0; }, {0.0, std::numbers::pi, 801}, 3);
    for (int n = 1; n <= 3; ++n) EXPECT_NEAR(r.eigenvalues[n - 1], n * n, 1e-4);
}

TEST(FdEigen, AscendingAndSecondOrder) {
    auto U = [](double x) { return x * x; };
    const auto e1 = fd_eigen_single(U, {-10.0, 10.0, 401}, 4);
    const auto e2 = fd_eigen_single(U, {-10.0, 10.0, 801}, 4);
    for (std::size_t i = 1; i < e1.size(); ++i) EXPECT_GT(e1[i], e1[i - 1]);
    for (int n = 0; n < 4; ++n) {
        const double ratio = std::abs(e1[n] - (2 * n + 1)) / std::abs(e2[n] - (2 * n + 1));
        EXPECT_GT(ratio, 3.5);
        EXPECT_LT(ratio, 4.5);
    }
}

TEST(FdEigen, ToleranceNotConverged) {
    try {
        (void)fd_eigen([](double x) { return x * x; }, {-10.0, 10.0, 41}, 3, 1e-12);
        FAIL() << "expected NotConverged";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotConverged);
    }
}

TEST(Quadrature, Examples) {
    EXPECT_NEAR(quadrature([](double x) { return std::exp(-x); }, Interval::half_line(0.0)).value, 1.0, 1e-12);
    const double b = quadrature([](double t) { return std::pow(t, 1.5) * std::pow(1.0 - t, 2.5); }, Interval::open(0.0, 1.0)).value;
    EXPECT_NEAR(b, beta_value(2.5, 3.5), 1e-12);
    const double lag = quadrature(
                           [](double x) {
                               const double y = ortho_eval(Family::Laguerre, 2, x, 1.0);
                               return std::exp(-x) * x * x * y * y;
                           },
                           Interval::half_line(0.0))
                           .value;
    EXPECT_NEAR(lag, 18.0, 18.0 * 1e-10);
}

TEST(Quadrature, WholeLineAndDeterminism) {
    auto f = [](double x) { return std::exp(-x * x); };
    const QuadResult a = quadrature(f, Interval::whole_line());
    const QuadResult b = quadrature(f, Interval::whole_line());
    EXPECT_NEAR(a.value, std::sqrt(std::numbers::pi), 1e-12);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(SphereQuadrature, Examples) {
    auto Y = [](int l, int m) {
        return [=](double t, double p) { return spherical_harmonic(l, m, t, p); };
    };
    EXPECT_NEAR(sphere_quadrature([&](double t, double p) { return std::norm(Y(0, 0)(t, p)); }).real(), 1.0, 1e-12);
    const auto c = sphere_quadrature([&](double t, double p) { return Y(1, 0)(t, p) * std::conj(Y(2, 0)(t, p)); });
    EXPECT_LT(std::abs(c), 1e-10);
    EXPECT_NEAR(sphere_quadrature([&](double t, double p) { return std::norm(Y(3, 2)(t, p)); }).real(), 1.0, 1e-8);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    std::vector<double> x, w;
    gauss_legendre(8, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 14);
    EXPECT_NEAR(s, 2.0 / 15.0, 1e-14);
}

TEST(NormalizationCheck, Examples) {
    EXPECT_NEAR(normalization_check(eigenstate(PotentialId::Harmonic1D, {}, 0)), 1.0, 1e-10);
    const Params kr{{"D", 2.0}, {"a", 1.0}, {"h2m", 1.0}, {"l", 0}};
    EXPECT_LT(std::abs(orthogonality_check(eigenstate(PotentialId::Kratzer, kr, 0), eigenstate(PotentialId::Kratzer, kr, 1))),
              1e-6);
    // gamma / alpha = 5
    EXPECT_NEAR(normalization_check(eigenstate(PotentialId::Morse, {}, 1)), 1.0, 1e-5);
}

TEST(OdeResidual, Examples) {
    const PotentialModel& h = model(PotentialId::Harmonic1D);
    const Params hp = h.resolve({});
    EXPECT_LT(ode_residual(h.state(hp, 1), h.equation(hp, h.energy(hp, 1))), 1e-6);

    const PotentialModel& hu = model(PotentialId::Hulthen);
    const Params up = hu.resolve({{"beta2", 2.0}});
    EXPECT_LT(ode_residual(hu.state(up, 1), hu.equation(up, hu.energy(up, 1))), 1e-6);
}

TEST(OdeResidual, PerturbedEnergyIsDetected) {
    const PotentialModel& h = model(PotentialId::Harmonic1D);
    const Params hp = h.resolve({});
    const double e = h.energy(hp, 1);
    EXPECT_GT(ode_residual(h.state(hp, 1), h.equation(hp, e * 1.01)), 1e-3);
}

TEST(SignChanges, Hermite) {
    for (int n = 0; n <= 6; ++n)
        EXPECT_EQ(count_sign_changes([n](double x) { return ortho_eval(Family::Hermite, n, x); }, Interval::open(-6.0, 6.0)), n);
}
