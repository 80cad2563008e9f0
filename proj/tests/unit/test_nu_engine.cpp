#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nuspectra/catalog.hpp"
#include "nuspectra/errors.hpp"
#include "nuspectra/nu_engine.hpp"
#include "nuspectra/poly_kernel.hpp"

using namespace nuspectra;

namespace {

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void expect_poly(const LowPoly& got, const LowPoly& want, double tol = 1e-12) {
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(got.c[i], want.c[i], tol) << "coefficient " << i;
}

NuEquation oscillator(double eps) { return {LowPoly(1.0), LowPoly(2.0 * eps, 0.0, -1.0), LowPoly(0.0), Interval::whole_line()}; }

NuEquation coulomb(double eps0, double Z, int l) {
    return {LowPoly(0.0, 1.0), LowPoly(-l * (l + 1.0), 2.0 * Z, 2.0 * eps0), LowPoly(0.0), Interval::half_line(0.0)};
}

NuEquation spherical(double mu, int m) {
    return {LowPoly(1.0, 0.0, -1.0), LowPoly(mu - m * m, 0.0, -mu), LowPoly(0.0, -2.0), Interval::open(-1.0, 1.0)};
}

} // namespace

TEST(KCandidates, OscillatorGivesTwoEpsilon) {
    const auto k = k_candidates(oscillator(0.5));
    ASSERT_EQ(k.size(), 1u);
    EXPECT_NEAR(k[0], 1.0, 1e-14);
}

TEST(KCandidates, CoulombBranches) {
    const auto k = sorted(k_candidates(coulomb(-0.5, 1.0, 0)));
    ASSERT_EQ(k.size(), 2u);
    EXPECT_NEAR(k[0], 1.0, 1e-12);
    EXPECT_NEAR(k[1], 3.0, 1e-12);
}

TEST(KCandidates, SphericalHarmonicsMuAndMuMinusMSquared) {
    const auto k = sorted(k_candidates(spherical(6.0, 2)));
    ASSERT_EQ(k.size(), 2u);
    EXPECT_NEAR(k[0], 2.0, 1e-12);
    EXPECT_NEAR(k[1], 6.0, 1e-12);
}

TEST(KCandidates, NegativeDiscriminantIsNoRealK) {
    // sigma = x, sigma~ = x^2 (Bessel-like sign) has complex k only
    const NuEquation eq{LowPoly(0.0, 1.0), LowPoly(-0.25, 0.0, 1.0), LowPoly(1.0), Interval::half_line(0.0)};
    try {
        (void)k_candidates(eq);
        FAIL() << "expected NoRealK";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoRealK);
    }
}

TEST(KCandidates, DiscriminantOfPVanishes) {
    const NuEquation eqs[] = {oscillator(1.3), coulomb(-0.125, 1.0, 2), spherical(12.0, 1)};
    for (const auto& eq : eqs) {
        const LowPoly q = 0.25 * multiply(eq.sigma.derivative() - eq.tau_tilde, eq.sigma.derivative() - eq.tau_tilde) - eq.sigma_tilde;
        for (double k : k_candidates(eq)) {
            const LowPoly p = q + k * eq.sigma;
            const double scale = std::max(1.0, p.max_abs() * p.max_abs());
            EXPECT_LT(std::abs(p.d1() * p.d1() - 2.0 * p.d2() * p.at0()) / scale, 1e-10);
        }
    }
}

TEST(PiBranches, OscillatorPlusMinusXi) {
    const auto pi = pi_branches(oscillator(0.5), 1.0);
    std::vector<double> slopes{pi[0].c[1], pi[1].c[1]};
    EXPECT_EQ(sorted(slopes), (std::vector<double>{-1.0, 1.0}));
    EXPECT_EQ(pi[0].c[0], 0.0);
    EXPECT_EQ(pi[1].c[0], 0.0);
}

TEST(PiBranches, CoulombLPlusOneMinusX) {
    const auto pi = pi_branches(coulomb(-0.5, 1.0, 0), 1.0);
    const bool found = std::any_of(pi.begin(), pi.end(), [](const LowPoly& p) {
        return std::abs(p.c[0] - 1.0) < 1e-12 && std::abs(p.c[1] + 1.0) < 1e-12;
    });
    EXPECT_TRUE(found);
}

TEST(PiBranches, ConstantRadical) {
    const NuEquation eq{LowPoly(1.0), LowPoly(-1.0), LowPoly(0.0), Interval::whole_line()};
    const auto pi = pi_branches(eq, 0.0);
    std::vector<double> c0{pi[0].c[0], pi[1].c[0]};
    EXPECT_EQ(sorted(c0), (std::vector<double>{-1.0, 1.0}));
    EXPECT_EQ(pi[0].c[1], 0.0);
}

TEST(Select, OscillatorPicksMinusXi) {
    const NuBranch b = select_bound_state_branch(oscillator(0.5));
    expect_poly(b.pi, LowPoly(0.0, -1.0));
    expect_poly(b.tau, LowPoly(0.0, -2.0));
}

TEST(Select, SphericalHarmonics) {
    const NuBranch b = select_bound_state_branch(spherical(6.0, 2));
    expect_poly(b.pi, LowPoly(0.0, -2.0));
    expect_poly(b.tau, LowPoly(0.0, -6.0));
}

TEST(Select, KratzerTau) {
    const PotentialModel& m = model(PotentialId::Kratzer);
    const Params p = m.resolve({{"D", 1.0}, {"a", 1.0}, {"h2m", 1.0}, {"l", 0.0}});
    const NuBranch b = select_bound_state_branch(m.equation(p, -0.25));
    const double nu = 0.5 + std::sqrt(1.25);
    expect_poly(b.tau, LowPoly(2.0 * nu, -1.0), 1e-12);
}

TEST(Select, PermutationInvariant) {
    const NuEquation eqs[] = {oscillator(2.5), coulomb(-1.0 / 18.0, 1.0, 1), spherical(12.0, 2)};
    std::mt19937 rng(7);
    for (const auto& eq : eqs) {
        auto cands = all_branches(eq);
        const NuBranch ref = select_bound_state_branch(eq, cands);
        for (int i = 0; i < 10; ++i) {
            std::shuffle(cands.begin(), cands.end(), rng);
            const NuBranch b = select_bound_state_branch(eq, cands);
            EXPECT_EQ(b.k, ref.k);
            expect_poly(b.pi, ref.pi, 0.0);
        }
    }
}

TEST(Select, NoPhysicalBranch) {
    // the tau root sits on the boundary of (0, 1), the other branch has tau' > 0
    NuEquation eq = oscillator(0.5);
    eq.domain = Interval::open(0.0, 1.0);
    try {
        (void)select_bound_state_branch(eq);
        FAIL() << "expected NoPhysicalBranch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoPhysicalBranch);
    }
}

TEST(Reduce, OscillatorPhiRho) {
    const NuBranch b = select_bound_state_branch(oscillator(0.5));
    expect_poly(b.phi.exponent, LowPoly(0.0, 0.0, -0.5));
    expect_poly(b.rho.exponent, LowPoly(0.0, 0.0, -1.0));
    EXPECT_TRUE(b.phi.factors.empty());
}

TEST(Reduce, CoulombSecondLevel) {
    const NuBranch b = select_bound_state_branch(coulomb(-0.125, 1.0, 0));
    expect_poly(b.phi.exponent, LowPoly(0.0, -0.5));
    EXPECT_NEAR(b.phi.power_at(0.0), 1.0, 1e-12);
    expect_poly(b.rho.exponent, LowPoly(0.0, -1.0));
    EXPECT_NEAR(b.rho.power_at(0.0), 1.0, 1e-12);
}

TEST(Reduce, PoschlTellerPhiRho) {
    const PotentialModel& m = model(PotentialId::PoschlTeller);
    const Params p = m.resolve({{"a", 2.0}, {"b", 2.0}});
    const NuBranch b = select_bound_state_branch(m.equation(p, m.energy(p, 0)));
    EXPECT_NEAR(b.phi.power_at(0.0), 1.0, 1e-10);
    EXPECT_NEAR(b.phi.power_at(1.0), 1.0, 1e-10);
    EXPECT_NEAR(b.rho.power_at(0.0), 1.5, 1e-10);
    EXPECT_NEAR(b.rho.power_at(1.0), 1.5, 1e-10);
}

TEST(Reduce, BranchInvariants) {
    const NuEquation eqs[] = {oscillator(3.5), coulomb(-0.125, 1.0, 1), spherical(20.0, 3)};
    for (const auto& eq : eqs) {
        for (const auto& b : all_branches(eq)) {
            expect_poly(b.tau, eq.tau_tilde + 2.0 * b.pi, 1e-12);
            EXPECT_NEAR(b.lambda, b.k + b.pi.c[1], 1e-12);
            EXPECT_LT(reduction_residual(eq, b.k, b.pi), 1e-10 * std::max(1.0, eq.sigma_tilde.max_abs()));
        }
    }
}

TEST(QuantizedLambda, Oscillator) {
    const double lambda = quantized_lambda(LowPoly(0.0, -2.0), LowPoly(1.0), 3);
    EXPECT_DOUBLE_EQ(lambda, 6.0);
    // lambda = 2 eps - 1
    const PotentialModel& m = model(PotentialId::Harmonic1D);
    EXPECT_DOUBLE_EQ(0.5 * (lambda + 1.0), m.energy(m.resolve({}), 3));
}

TEST(QuantizedLambda, ZeroLevel) { EXPECT_EQ(quantized_lambda(LowPoly(0.3, -1.7), LowPoly(0.0, 1.0, -1.0), 0), 0.0); }

TEST(QuantizedLambda, Legendre) {
    EXPECT_DOUBLE_EQ(quantized_lambda(LowPoly(0.0, -2.0), LowPoly(1.0, 0.0, -1.0), 2), 6.0);
}

TEST(Rodrigues, HermiteTwo) {
    const ExpPowerProduct rho{LowPoly(0.0, 0.0, -1.0), {}};
    const Polynomial y = rodrigues_polynomial(LowPoly(1.0), rho, 2, 1.0);
    EXPECT_NEAR(y[0], -2.0, 1e-12);
    EXPECT_NEAR(y[1], 0.0, 1e-12);
    EXPECT_NEAR(y[2], 4.0, 1e-12);
}

TEST(Rodrigues, ZeroIsConstant) {
    const ExpPowerProduct rho{LowPoly(0.0, -1.0), {{0.0, 1.0}}};
    const Polynomial y = rodrigues_polynomial(LowPoly(0.0, 1.0), rho, 0, 2.5);
    EXPECT_EQ(y.degree(), 0);
    EXPECT_DOUBLE_EQ(y[0], 2.5);
}

TEST(Rodrigues, LaguerreOneAlphaOne) {
    const ExpPowerProduct rho{LowPoly(0.0, -1.0), {{0.0, 1.0}}};
    const Polynomial y = rodrigues_polynomial(LowPoly(0.0, 1.0), rho, 1, 1.0);
    EXPECT_NEAR(y[0], 2.0, 1e-12);
    EXPECT_NEAR(y[1], -1.0, 1e-12);
}

TEST(Rodrigues, MatchesRecurrence) {
    struct Case {
        Family f;
        double a, b;
    };
    const Case cases[] = {{Family::Hermite, 0, 0},   {Family::Laguerre, 0, 0},  {Family::Laguerre, 1, 0},
                          {Family::Laguerre, 2.5, 0}, {Family::Jacobi, 0, 0},    {Family::Jacobi, 0.5, 1.5},
                          {Family::Jacobi, 1.5, 0.5}, {Family::Jacobi, 1.5, 1.5}};
    for (const auto& c : cases) {
        const ClassicalForm cf = classical_form(c.f, c.a, c.b);
        for (int n = 0; n <= 6; ++n) {
            const Polynomial y = rodrigues_polynomial(cf.sigma, cf.rho, n, rodrigues_constant(c.f, n));
            for (int i = 0; i < 20; ++i) {
                const double x = c.f == Family::Jacobi ? -0.95 + 1.9 * i / 19.0 : (c.f == Family::Laguerre ? 0.3 * i : -3.0 + 0.3 * i);
                const double want = ortho_eval(c.f, n, x, c.a, c.b);
                EXPECT_NEAR(y(x), want, 1e-9 * std::max(1.0, std::abs(want))) << "n=" << n << " x=" << x;
            }
        }
    }
}
