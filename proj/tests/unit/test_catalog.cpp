#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nuspectra/catalog.hpp"
#include "nuspectra/errors.hpp"
#include "nuspectra/numeric_oracle.hpp"
#include "nuspectra/verify.hpp"

using namespace nuspectra;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Unknown;
}

} // namespace

TEST(Registry, EighteenIds) {
    EXPECT_EQ(all_models().size(), 18u);
    for (const PotentialModel* m : all_models()) {
        EXPECT_EQ(&model(m->name()), m);
        EXPECT_EQ(&model(m->id()), m);
        EXPECT_EQ(id_name(m->id()), m->name());
    }
    EXPECT_EQ(code_of([] { (void)model("woods_saxon"); }), ErrorCode::InvalidParams);
}

TEST(Registry, ResolveRejectsBadParams) {
    const PotentialModel& h = model(PotentialId::Hulthen);
    EXPECT_EQ(code_of([&] { (void)h.resolve({{"V0", -1.0}}); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([&] { (void)h.resolve({{"nonsense", 1.0}}); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([&] { (void)model(PotentialId::Coulomb).resolve({{"l", 0.5}}); }), ErrorCode::InvalidParams);
}

TEST(BuildEquation, Harmonic) {
    const PotentialModel& m = model(PotentialId::Harmonic1D);
    const NuEquation eq = m.equation(m.resolve({}), 0.5);
    EXPECT_DOUBLE_EQ(eq.sigma.c[0], 1.0);
    EXPECT_DOUBLE_EQ(eq.tau_tilde.max_abs(), 0.0);
    EXPECT_DOUBLE_EQ(eq.sigma_tilde.c[0], 1.0);
    EXPECT_DOUBLE_EQ(eq.sigma_tilde.c[2], -1.0);
}

TEST(BuildEquation, Hulthen) {
    // E = -1/8, V0 = 1, beta^2 = 2, a = 1: alpha^2 = 1/4
    const PotentialModel& m = model(PotentialId::Hulthen);
    const NuEquation eq = m.equation(m.resolve({{"beta2", 2.0}}), -0.125);
    EXPECT_DOUBLE_EQ(eq.sigma.c[1], 1.0);
    EXPECT_DOUBLE_EQ(eq.sigma.c[2], -1.0);
    EXPECT_NEAR(eq.sigma_tilde.c[0], -0.25, 1e-15);
}

TEST(BuildEquation, GeneralizedMorseSharesTheHulthenForm) {
    // kappa = 2, gamma = 1, eps = 1: D = 2, a = 1, r0 = ln 2
    const Params p{{"D", 2.0}, {"a", 1.0}, {"r0", std::numbers::ln2}, {"h2m", 1.0}};
    const PotentialModel& gm = model(PotentialId::GeneralizedMorse);
    const PotentialModel& via = model(PotentialId::GeneralizedMorseViaHulthen);
    const Params rp = gm.resolve(p);
    EXPECT_EQ(gm.level_count(rp), via.level_count(via.resolve(p)));
    for (int n = 0; n < gm.level_count(rp); ++n)
        EXPECT_NEAR(gm.energy(rp, n), via.energy(via.resolve(p), n), 1e-12 * std::abs(gm.energy(rp, n)));
    const NuEquation eq = gm.equation(rp, 1.0);
    for (double x : {0.2, 0.5, 0.8}) EXPECT_GE(eq.sigma(x), 0.0);
}

TEST(Spectrum, Harmonic) {
    const Spectrum s = spectrum(PotentialId::Harmonic1D, {}, 0, 4);
    ASSERT_EQ(s.levels.size(), 5u);
    for (int n = 0; n <= 4; ++n) EXPECT_DOUBLE_EQ(s.levels[n].energy, n + 0.5);
    EXPECT_EQ(s.level_count, -1);
    EXPECT_FALSE(s.truncated);
}

TEST(Spectrum, Coulomb) {
    for (int l : {0, 1, 2}) {
        const Spectrum s = spectrum(PotentialId::Coulomb, {{"l", l}}, 0, 3);
        for (const Level& lv : s.levels) {
            const int n = lv.quantum_numbers.at("n_r") + l + 1;
            EXPECT_NEAR(lv.energy, -0.5 / (n * n), 1e-15);
            EXPECT_EQ(lv.quantum_numbers.at("n"), n);
        }
    }
}

TEST(Spectrum, HulthenSingleLevel) {
    const Spectrum s = spectrum(PotentialId::Hulthen, {{"beta2", 2.0}}, 1, 5);
    ASSERT_EQ(s.levels.size(), 1u);
    EXPECT_TRUE(s.truncated);
    EXPECT_NEAR(s.levels[0].energy, -0.125, 1e-14);
    const auto fd = fd_levels(PotentialId::Hulthen, model(PotentialId::Hulthen).resolve({{"beta2", 2.0}}), {1});
    EXPECT_LT(std::abs(fd[0] + 0.125) / 0.125, 1e-3);
}

TEST(Spectrum, HulthenNoBoundStates) {
    EXPECT_EQ(model(PotentialId::Hulthen).level_count(model(PotentialId::Hulthen).resolve({{"beta2", 0.5}})), 0);
    EXPECT_EQ(code_of([] { (void)eigenstate(PotentialId::Hulthen, {{"beta2", 0.5}}, 1); }), ErrorCode::NoBoundStates);
}

TEST(Spectrum, DiracGroundState) {
    const double mu = 0.3;
    const Spectrum s = spectrum(PotentialId::DiracCoulomb, {{"mu", mu}}, 0, 0);
    EXPECT_NEAR(s.levels.at(0).energy, std::sqrt(1.0 - mu * mu), 1e-15);
    EXPECT_EQ(code_of([] { (void)spectrum(PotentialId::DiracCoulomb, {{"mu", 1.5}}, 0, 0); }),
              ErrorCode::SupercriticalCharge);
}

TEST(Spectrum, LevelCountRules) {
    auto count = [](PotentialId id, const Params& p) { return model(id).level_count(model(id).resolve(p)); };
    EXPECT_EQ(count(PotentialId::Hulthen, {{"beta2", 2.0}}), 1);
    EXPECT_EQ(count(PotentialId::ModPoschlTeller, {{"a", 4.0}}), 2);
    // gamma / alpha = 3.2 with gamma = 8, alpha = 2.5
    EXPECT_EQ(count(PotentialId::Morse, {{"D", 64.0}}), 3);
    EXPECT_EQ(count(PotentialId::Morse, {}), 5);
    EXPECT_EQ(count(PotentialId::Harmonic1D, {}), -1);
}

TEST(Spectrum, QuantizationRoundTrip) {
    for (const PotentialModel* m : all_models()) {
        if (m->id() == PotentialId::Bessel) continue;
        for (const RegressionInstance& ri : m->regression_instances()) {
            const Params p = m->resolve(ri.params);
            const double e = m->quantization_target(p, ri.level);
            const double q = quantization_energy(*m, p, ri.level);
            EXPECT_LT(std::abs(q - e), 1e-9 * std::max(1.0, std::abs(e))) << m->name();
        }
    }
}

TEST(Eigenstate, SphericalHarmonics) {
    const double y11 = spherical_harmonic(1, 1, std::numbers::pi / 2, 0.0).real();
    EXPECT_NEAR(y11, -0.34549414947133547926, 1e-15);
    EXPECT_NEAR(std::abs(spherical_harmonic(1, 0, std::numbers::pi / 2, 0.3)), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(spherical_harmonic(0, 0, 0.4, 1.0)), 0.5 / std::sqrt(std::numbers::pi), 1e-15);
}

TEST(Eigenstate, NormalizationConstantsAndNodes) {
    for (const PotentialModel* m : all_models()) {
        for (const RegressionInstance& ri : m->regression_instances()) {
            const Params p = m->resolve(ri.params);
            if (m->level_count(p) == 0) continue;
            const int level = m->first_level(p);
            BoundState s;
            try {
                s = m->state(p, level);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::UnsupportedForm || e.code() == ErrorCode::NoBoundStates) continue;
                throw;
            }
            EXPECT_TRUE(std::isfinite(s.normalization) && s.normalization != 0.0) << m->name();
            EXPECT_FALSE(s.components.empty());
            EXPECT_EQ(s.polynomial_degree, m->nu_degree(p, level)) << m->name();
        }
    }
}

TEST(Eigenstate, HarmonicValues) {
    const BoundState s = eigenstate(PotentialId::Harmonic1D, {}, 0);
    EXPECT_NEAR(s.psi(0.0), std::pow(std::numbers::pi, -0.25), 1e-15);
    EXPECT_NEAR(s.psi(1.0), std::pow(std::numbers::pi, -0.25) * std::exp(-0.5), 1e-15);
    EXPECT_DOUBLE_EQ(s.energy, 0.5);
}

TEST(CoordinateMap, RoundTrip) {
    for (const PotentialModel* m : all_models()) {
        const Params p = m->resolve({});
        const CoordinateMap cm = m->coordinate_map(p);
        const double lo = cm.physical.lower_finite() ? cm.physical.lower : -3.0;
        const double hi = cm.physical.upper_finite() ? cm.physical.upper : 3.0;
        for (int i = 1; i < 10; ++i) {
            const double x = lo + (hi - lo) * i / 10.0;
            if (!cm.physical.contains_interior(x)) continue;
            const double xi = cm.forward(x);
            EXPECT_NEAR(cm.inverse(xi), x, 1e-10 * std::max(1.0, std::abs(x))) << m->name();
            const double h = 1e-6 * std::max(1.0, std::abs(x));
            const double num = (cm.forward(x + h) - cm.forward(x - h)) / (2 * h);
            EXPECT_NEAR(cm.jacobian(x), num, 1e-5 * std::max(1.0, std::abs(num))) << m->name();
        }
    }
}

TEST(TableMismatch, EngineMatchesRows) {
    for (const PotentialModel* m : all_models()) {
        if (m->id() == PotentialId::Bessel) continue;
        for (const RegressionInstance& ri : m->regression_instances()) {
            const Params p = m->resolve(ri.params);
            const double e = m->energy(p, ri.level);
            const auto row = m->table_row(p, e);
            ASSERT_TRUE(row.has_value()) << m->name();
            const NuEquation eq = m->equation(p, e);
            EXPECT_LT(table_mismatch(eq, select_bound_state_branch(eq), *row), 1e-10) << m->name();
        }
    }
}
