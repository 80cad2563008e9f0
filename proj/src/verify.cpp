#include "nuspectra/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "nuspectra/bessel.hpp"
#include "nuspectra/errors.hpp"
#include "nuspectra/molecular.hpp"
#include "nuspectra/numeric_oracle.hpp"
#include "nuspectra/poly_kernel.hpp"
#include "nuspectra/relativistic.hpp"

namespace nuspectra {

namespace {

double get(const Params& p, const char* key) { return p.at(key); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

CheckResult make_check(std::string suite, std::string name, double measured, double tolerance, std::string detail = {}) {
    CheckResult r;
    r.suite = std::move(suite);
    r.name = std::move(name);
    r.measured = measured;
    r.tolerance = tolerance;
    r.passed = std::isfinite(measured) && measured <= tolerance;
    r.detail = std::move(detail);
    return r;
}

CheckResult failed_check(std::string suite, std::string name, const std::exception& e) {
    CheckResult r;
    r.suite = std::move(suite);
    r.name = std::move(name);
    r.measured = std::numeric_limits<double>::infinity();
    r.passed = false;
    r.detail = e.what();
    return r;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string params_text(const Params& p) {
    std::string s;
    for (const auto& [k, v] : p) {
        if (!s.empty()) s += ",";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s=%.6g", k.c_str(), v);
        s += buf;
    }
    return s;
}

/// Distinct parameter sets of the regression instances.
std::vector<Params> instance_params(const PotentialModel& m) {
    std::vector<Params> out;
    for (const auto& inst : m.regression_instances()) {
        const Params p = m.resolve(inst.params);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------- tables

CheckResult bessel_table_check(const Tolerances& tol) {
    double worst = 0.0;
    for (double nu : {0.5, 1.0, 2.5}) {
        const BesselFixture f = bessel_reduction_fixture(nu);
        const ComplexBranch b = complex_branch(f.equation, 0, 0);
        const double scale = std::max(1.0, nu * nu);
        worst = std::max(worst, std::abs(b.k - f.k) / scale);
        worst = std::max(worst, std::abs(b.lambda - f.lambda) / scale);
        for (int i = 0; i < 3; ++i) {
            worst = std::max(worst, std::abs(b.pi.c[i] - f.pi.c[i]) / scale);
            worst = std::max(worst, std::abs(b.tau.c[i] - f.tau.c[i]) / scale);
        }
        // sigma phi'/phi = pi and sigma rho'/rho = tau - sigma' with sigma = z
        worst = std::max(worst, std::abs(Complex(f.phi_power) - f.pi.c[0]) + std::abs(f.phi_rate - f.pi.c[1]));
        worst = std::max(worst, std::abs(Complex(f.rho_power) - (f.tau.c[0] - 1.0)) + std::abs(f.rho_rate - f.tau.c[1]));
    }
    return make_check("tables", "bessel", worst, tol.table, "complex branch k = 2i nu against the fixture");
}

} // namespace

std::vector<CheckResult> verify_tables(const Tolerances& tol) {
    std::vector<CheckResult> out;
    for (const PotentialModel* m : all_models()) {
        const std::string id(m->name());
        if (m->id() == PotentialId::Bessel) {
            out.push_back(bessel_table_check(tol));
            try {
                (void)all_branches(bessel_reduction_fixture(0.5).equation);
                out.push_back(make_check("tables", "bessel_real_path", 1.0, 0.0, "real engine accepted a complex-k equation"));
            } catch (const Error& e) {
                out.push_back(make_check("tables", "bessel_real_path", e.code() == ErrorCode::NoRealK ? 0.0 : 1.0, 0.0,
                                         std::string("real engine: ") + e.what()));
            }
            continue;
        }
        double worst = 0.0, worst_q = 0.0;
        std::string detail;
        try {
            for (const auto& inst : m->regression_instances()) {
                const Params p = m->resolve(inst.params);
                m->require_bound(p, inst.level);
                const double e = m->energy(p, inst.level);
                const NuEquation eq = m->equation(p, e);
                const NuBranch b = select_bound_state_branch(eq);
                const auto row = m->table_row(p, e);
                if (!row) fail(ErrorCode::DomainError, "no table row at " + params_text(p));
                worst = std::max(worst, table_mismatch(eq, b, *row));
                const double target = m->quantization_target(p, inst.level);
                worst_q = std::max(worst_q, rel_err(quantization_energy(*m, p, inst.level), target));
            }
            out.push_back(make_check("tables", id, worst, tol.table, "engine vs table row"));
            out.push_back(make_check("tables", id + ".quantization", worst_q, tol.quantization,
                                     "lambda(E) = lambda_n root vs closed form"));
        } catch (const std::exception& e) {
            out.push_back(failed_check("tables", id, e));
        }
    }
    // level-count rules
    auto count_check = [&](const char* name, const char* id, Params p, int expected) {
        try {
            const PotentialModel& m = model(id);
            const int got = m.level_count(m.resolve(p));
            out.push_back(make_check("tables", name, std::abs(got - expected), 0.0, fmt("%.0f levels, expected %.0f", got, expected)));
        } catch (const std::exception& e) {
            out.push_back(failed_check("tables", name, e));
        }
    };
    count_check("level_count.hulthen", "hulthen", {{"beta2", 2.0}}, 1);
    count_check("level_count.mod_poschl_teller", "mod_poschl_teller", {{"a", 4.0}}, 2);
    count_check("level_count.morse", "morse", {{"D", 3.2 * 3.2}, {"alpha", 1.0}, {"r0", 1.0}, {"h2m", 1.0}}, 3);
    try {
        const PotentialModel& m = model("hulthen");
        m.require_bound(m.resolve({{"beta2", 0.5}}), 1);
        out.push_back(make_check("tables", "level_count.hulthen_empty", 1.0, 0.0, "beta^2 = 0.5 accepted"));
    } catch (const Error& e) {
        out.push_back(make_check("tables", "level_count.hulthen_empty", e.code() == ErrorCode::NoBoundStates ? 0.0 : 1.0,
                                 0.0, e.what()));
    }
    // reduced Bessel equation and its Poisson integral
    out.push_back(make_check("tables", "bessel.reduced_residual", bessel_reduced_residual(0.5, Complex(1.3, 0.0)), 1e-8));
    out.push_back(make_check("tables", "bessel.substitution_residual",
                             bessel_substitution_residual(0.5, Complex(1.3, 0.0)), 1e-8));
    {
        const double nu = 0.5, z = 2.0;
        QuadOptions o;
        o.abs_tol = 1e-14;
        o.rel_tol = 1e-13;
        const double integral =
            quadrature([&](double t) { return std::pow(1.0 - t * t, nu - 0.5) * std::cos(z * t); }, Interval::open(-1.0, 1.0), o)
                .value;
        const double poisson = std::pow(0.5 * z, nu) / (std::sqrt(std::numbers::pi) * gamma_fn(nu + 0.5)) * integral;
        out.push_back(make_check("tables", "bessel.poisson_vs_series", rel_err(poisson, bessel_j_series(nu, z)), 1e-8));
        out.push_back(make_check("tables", "bessel.reduced_vs_series", rel_err(bessel_j_reduced(nu, z), bessel_j_series(nu, z)),
                                 1e-8));
    }
    return out;
}

// ---------------------------------------------------------------- oracle

namespace {

struct LinearProblem {
    std::function<double(double)> U; ///< -u'' + U u = lambda u
    Grid grid;
    double scale;                     ///< E = scale * lambda
    std::function<int(int)> index;    ///< FD index of a level
};

/// Self-consistent radial problem -u'' + U(x, e) u = (e^2 - 1) u, e in (0, 1).
struct RelativisticProblem {
    std::function<double(double, double)> U;
    Grid grid;
};

LinearProblem linear_problem(PotentialId id, const Params& p) {
    auto identity = [](int v) { return v; };
    const double r0_eps = 1e-6;
    switch (id) {
    case PotentialId::Harmonic1D: {
        // xi = sqrt(m w / hbar) x, E = hw lambda / 2
        return {[](double x) { return x * x; }, {-10.0, 10.0, 2001}, 0.5 * get(p, "hw"), identity};
    }
    case PotentialId::SphericalHarmonics: {
        // u = sqrt(sin theta) Theta turns the polar equation into Schrodinger form
        const double m = get(p, "m");
        const int am = int(std::abs(m));
        return {[m](double t) { return (m * m - 0.25) / std::pow(std::sin(t), 2) - 0.25; },
                {0.0, std::numbers::pi, 4001},
                1.0,
                [am](int l) { return l - am; }};
    }
    case PotentialId::Coulomb: {
        // atomic units scaled by Z: r in a0, E = lambda / 2
        const double Z = get(p, "Z"), l = get(p, "l");
        return {[=](double r) { return l * (l + 1.0) / (r * r) - 2.0 * Z / r; },
                {r0_eps, 200.0 / Z, 8001},
                0.5,
                identity};
    }
    case PotentialId::Confinement3D: {
        const double V0 = get(p, "V0"), a = get(p, "a"), h2m = get(p, "h2m"), l = get(p, "l");
        return {[=](double r) { return (V0 * std::pow(r / a - a / r, 2)) / h2m + l * (l + 1.0) / (r * r); },
                {r0_eps, 12.0 * a, 8001},
                h2m,
                identity};
    }
    case PotentialId::Oscillator3D: {
        const double l = get(p, "l");
        return {[=](double r) { return r * r + l * (l + 1.0) / (r * r); }, {r0_eps, 12.0, 6001}, 0.5 * get(p, "hw"),
                identity};
    }
    case PotentialId::PoschlTeller: {
        const double a = get(p, "a"), b = get(p, "b"), al = get(p, "alpha");
        return {[=](double x) {
                    return al * al * (a * (a - 1.0) / std::pow(std::sin(al * x), 2) +
                                      b * (b - 1.0) / std::pow(std::cos(al * x), 2));
                },
                {0.0, std::numbers::pi / (2.0 * al), 4001},
                get(p, "h2m"),
                identity};
    }
    case PotentialId::ModPoschlTeller: {
        const double a = get(p, "a"), al = get(p, "alpha");
        return {[=](double x) { return -al * al * a * (a - 1.0) / std::pow(std::cosh(al * x), 2); },
                {-25.0 / al, 25.0 / al, 8001},
                get(p, "h2m"),
                [](int n) { return 2 * n; }};
    }
    case PotentialId::Kratzer: {
        const double D = get(p, "D"), a = get(p, "a"), h2m = get(p, "h2m"), l = get(p, "l");
        return {[=](double r) { return -2.0 * D * (a / r - 0.5 * a * a / (r * r)) / h2m + l * (l + 1.0) / (r * r); },
                {r0_eps, 80.0 * a, 8001},
                h2m,
                identity};
    }
    case PotentialId::Hulthen: {
        const double V0 = get(p, "V0"), a = get(p, "a"), h2m = a * a * V0 / get(p, "beta2");
        return {[=](double r) { return -V0 / std::expm1(r / a) / h2m; }, {r0_eps, 80.0 * a, 8001}, h2m,
                [](int n) { return n - 1; }};
    }
    case PotentialId::Morse:
    case PotentialId::MorseRotation: {
        const double D = get(p, "D"), al = get(p, "alpha"), r0 = get(p, "r0"), h2m = get(p, "h2m");
        const double L = id == PotentialId::MorseRotation ? get(p, "l") * (get(p, "l") + 1.0) : 0.0;
        return {[=](double r) {
                    const double e = std::exp(-al * (r - r0) / r0);
                    return D * (e * e - 2.0 * e) / h2m + L / (r * r);
                },
                {r0_eps, r0 * (1.0 + 25.0 / al), 8001},
                h2m,
                identity};
    }
    case PotentialId::ModHulthen:
    case PotentialId::ModHulthenRotation: {
        const double V0 = get(p, "V0"), a = get(p, "a"), b = get(p, "b"), h2m = a * a * V0 / get(p, "beta2");
        const double L = id == PotentialId::ModHulthenRotation ? get(p, "l") * (get(p, "l") + 1.0) : 0.0;
        return {[=](double r) {
                    const double e = std::exp(-r / a), d = -std::expm1(-r / a);
                    return -V0 * e * (1.0 - b * e) / (d * d) / h2m + L / (r * r);
                },
                {r0_eps, 60.0 * a, 8001},
                h2m,
                identity};
    }
    case PotentialId::GeneralizedMorse:
    case PotentialId::GeneralizedMorseViaHulthen: {
        const double D = get(p, "D"), a = get(p, "a"), r0 = get(p, "r0"), h2m = get(p, "h2m");
        const double g = std::expm1(a * r0);
        return {[=](double r) { return D * std::pow(1.0 - g / std::expm1(a * r), 2) / h2m; },
                {r0_eps, 150.0 / a, 8001},
                h2m,
                identity};
    }
    default: break;
    }
    fail(ErrorCode::UnsupportedForm, "no linear finite-difference problem for this id");
}

} // namespace

std::vector<double> fd_levels(PotentialId id, const Params& user, const std::vector<int>& levels) {
    const PotentialModel& m = model(id);
    const Params p = m.resolve(user);
    for (int v : levels) m.require_bound(p, v);
    std::vector<double> out;
    if (id == PotentialId::RelSchrodinger || id == PotentialId::DiracCoulomb) {
        // x = beta r; -u'' + (c/x^2 - 2 e mu / x) u = (e^2 - 1) u
        const double mu = get(p, "mu");
        double c = 0.0;
        if (id == PotentialId::RelSchrodinger) {
            const double l = get(p, "l");
            c = l * (l + 1.0) - mu * mu;
        } else {
            const double kappa = get(p, "kappa");
            const double nu = std::sqrt(kappa * kappa - mu * mu);
            c = nu * (nu - 1.0);
        }
        for (int v : levels) {
            // principal quantum number sets the radial extent
            const double n = id == PotentialId::RelSchrodinger ? v + 1.0 + get(p, "l") : v + std::abs(get(p, "kappa"));
            const Grid grid{0.0, 30.0 * n * n / mu, 16001};
            const double e = fd_self_consistent([=](double x, double eps) { return c / (x * x) - 2.0 * eps * mu / x; },
                                                [](double eps) { return eps * eps - 1.0; }, grid, v, 0.05, 1.0 - 1e-12);
            out.push_back(e);
        }
        return out;
    }
    const LinearProblem lp = linear_problem(id, p);
    int count = 0;
    for (int v : levels) count = std::max(count, lp.index(v) + 1);
    const FdResult r = fd_eigen(lp.U, lp.grid, count);
    for (int v : levels) out.push_back(lp.scale * r.eigenvalues.at(lp.index(v)));
    return out;
}

std::vector<OracleCase> oracle_cases() {
    return {
        {PotentialId::Harmonic1D, {{"hw", 1.0}, {"mw_hbar", 1.0}}, {0, 1, 2, 3, 4}, 1e-5, true},
        {PotentialId::SphericalHarmonics, {{"m", 1.0}}, {1, 2, 3, 4}, 1e-3},
        {PotentialId::Coulomb, {{"Z", 1.0}, {"l", 0.0}}, {0, 1, 2}, 2e-3},
        {PotentialId::Coulomb, {{"Z", 1.0}, {"l", 1.0}}, {0, 1, 2}, 2e-3},
        {PotentialId::RelSchrodinger, {{"mu", 0.3}, {"beta", 1.0}, {"l", 0.0}}, {0, 1, 2}, 2e-3},
        {PotentialId::RelSchrodinger, {{"mu", 0.3}, {"beta", 1.0}, {"l", 1.0}}, {0, 1, 2}, 2e-3},
        {PotentialId::DiracCoulomb, {{"mu", 0.3}, {"beta", 1.0}, {"kappa", -1.0}}, {0, 1, 2}, 2e-3},
        {PotentialId::DiracCoulomb, {{"mu", 0.3}, {"beta", 1.0}, {"kappa", 1.0}}, {1, 2}, 2e-3},
        {PotentialId::Confinement3D, {{"V0", 1.0}, {"a", 1.0}, {"h2m", 1.0}, {"l", 1.0}}, {0, 1, 2, 3}, 1e-3},
        {PotentialId::Oscillator3D, {{"hw", 1.0}, {"mw_hbar", 1.0}, {"l", 1.0}}, {0, 1, 2, 3}, 1e-3},
        {PotentialId::PoschlTeller, {{"a", 2.0}, {"b", 3.0}, {"alpha", 1.0}, {"h2m", 1.0}}, {0, 1, 2, 3}, 1e-3},
        {PotentialId::ModPoschlTeller, {{"a", 6.0}, {"alpha", 1.0}, {"h2m", 1.0}}, {0, 1, 2}, 1e-3},
        {PotentialId::Kratzer, {{"D", 10.0}, {"a", 1.0}, {"h2m", 1.0}, {"l", 0.0}}, {0, 1, 2, 3}, 1e-3},
        {PotentialId::Hulthen, {{"V0", 1.0}, {"beta2", 2.0}, {"a", 1.0}}, {1}, 1e-3},
        {PotentialId::Hulthen, {{"V0", 1.0}, {"beta2", 30.0}, {"a", 1.0}}, {1, 2, 3, 4}, 1e-3},
        {PotentialId::Morse, {{"D", 156.25}, {"alpha", 2.5}, {"r0", 1.0}, {"h2m", 1.0}}, {0, 1, 2, 3, 4}, 1e-3},
        {PotentialId::MorseRotation, {{"D", 400.0}, {"alpha", 2.38}, {"r0", 1.0}, {"h2m", 1.0}, {"l", 1.0}}, {0, 1, 2, 3},
         1e-2},
        {PotentialId::ModHulthen, {{"V0", 1.0}, {"beta2", 40.0}, {"b", 2.0}, {"a", 1.0}}, {0, 1, 2}, 1e-3},
        {PotentialId::ModHulthenRotation, {{"V0", 1.0}, {"beta2", 400.0}, {"b", 2.0}, {"a", 1.0}, {"l", 1.0}}, {0, 1, 2},
         1e-2},
        {PotentialId::GeneralizedMorse, {{"D", 10.0}, {"a", 1.0}, {"r0", std::log(3.0)}, {"h2m", 1.0}}, {0, 1, 2}, 1e-3},
        {PotentialId::GeneralizedMorseViaHulthen, {{"D", 10.0}, {"a", 1.0}, {"r0", std::log(3.0)}, {"h2m", 1.0}}, {0, 1, 2},
         1e-3},
    };
}

OracleComparison run_oracle_case(const OracleCase& c, double tolerance_scale) {
    OracleComparison out;
    out.spec = c;
    const PotentialModel& m = model(c.id);
    const Params p = m.resolve(c.params);
    for (int v : c.levels) out.closed_form.push_back(m.energy(p, v));
    out.numeric = fd_levels(c.id, p, c.levels);
    const bool binding = c.id == PotentialId::RelSchrodinger || c.id == PotentialId::DiracCoulomb;
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
        double e;
        if (c.absolute)
            e = std::abs(out.numeric[i] - out.closed_form[i]);
        else if (binding)
            e = rel_err(1.0 - out.numeric[i], 1.0 - out.closed_form[i]); // the binding energy carries the physics
        else
            e = rel_err(out.numeric[i], out.closed_form[i]);
        out.max_error = std::max(out.max_error, e);
    }
    out.passed = out.max_error <= c.tolerance * tolerance_scale;
    return out;
}

std::vector<CheckResult> verify_oracle(const Tolerances& tol) {
    std::vector<CheckResult> out;
    for (const OracleCase& c : oracle_cases()) {
        const std::string name = std::string(id_name(c.id)) + "[" + params_text(c.params) + "]";
        try {
            const OracleComparison r = run_oracle_case(c, tol.oracle_scale);
            out.push_back(make_check("oracle", name, r.max_error, c.tolerance * tol.oracle_scale,
                                     c.absolute ? "max absolute error" : "max relative error"));
        } catch (const std::exception& e) {
            out.push_back(failed_check("oracle", name, e));
        }
    }
    return out;
}

// ---------------------------------------------------------------- normalization

double klein_gordon_overlap(const Params& user, int n1, int n2) {
    const PotentialModel& m = model(PotentialId::RelSchrodinger);
    const Params p = m.resolve(user);
    const BoundState a = m.state(p, n1), b = m.state(p, n2);
    const double mu = get(p, "mu"), beta = get(p, "beta");
    auto inner = [&](const BoundState& s, const BoundState& t) {
        const double w = s.energy + t.energy;
        QuadOptions o;
        o.breakpoints = s.breakpoints;
        o.breakpoints.insert(o.breakpoints.end(), t.breakpoints.begin(), t.breakpoints.end());
        return quadrature([&](double r) { return r * r * (w + 2.0 * mu / (beta * r)) * s.psi(r) * t.psi(r); },
                          s.domain, o)
            .value;
    };
    return inner(a, b) / std::sqrt(inner(a, a) * inner(b, b));
}

std::vector<CheckResult> verify_normalization(const Tolerances& tol) {
    std::vector<CheckResult> out;
    for (const PotentialModel* m : all_models()) {
        if (m->id() == PotentialId::Bessel) continue;
        const std::string id(m->name());
        double worst_norm = 0.0, worst_orth = 0.0, worst_res = 0.0;
        int node_miss = 0, states = 0, pairs = 0;
        std::string node_detail;
        try {
            for (const Params& p : instance_params(*m)) {
                const int first = m->first_level(p), count = m->level_count(p);
                const int n_levels = count < 0 ? 3 : std::min(3, count);
                std::vector<BoundState> st;
                std::vector<int> lv;
                for (int k = 0; k < n_levels; ++k) {
                    const int level = first + k;
                    st.push_back(m->state(p, level));
                    lv.push_back(level);
                }
                for (std::size_t i = 0; i < st.size(); ++i) {
                    const BoundState& s = st[i];
                    worst_norm = std::max(worst_norm, std::abs(normalization_check(s) - 1.0));
                    const double eq_e = m->quantization_target(p, lv[i]);
                    worst_res = std::max(worst_res, ode_residual(s, m->quantization_equation(p, eq_e)));
                    const int nodes = count_sign_changes(s.polynomial, s.residual_window);
                    if (nodes != s.polynomial_degree) {
                        ++node_miss;
                        node_detail = fmt("level %.0f: %.0f sign changes, expected %.0f", lv[i], nodes, s.polynomial_degree);
                    }
                    ++states;
                    for (std::size_t j = 0; j < i; ++j) {
                        const double o = m->id() == PotentialId::RelSchrodinger ? klein_gordon_overlap(p, lv[j], lv[i])
                                                                                 : orthogonality_check(st[j], s);
                        worst_orth = std::max(worst_orth, std::abs(o));
                        ++pairs;
                    }
                }
            }
            out.push_back(make_check("normalization", id, worst_norm, tol.normalization, fmt("%.0f states", states)));
            out.push_back(make_check("normalization", id + ".orthogonality", worst_orth, tol.orthogonality,
                                     m->id() == PotentialId::RelSchrodinger ? fmt("%.0f pairs, Klein-Gordon weight", pairs)
                                                                            : fmt("%.0f pairs", pairs)));
            out.push_back(make_check("normalization", id + ".residual", worst_res, tol.residual, "mapped ODE residual"));
            out.push_back(make_check("normalization", id + ".nodes", node_miss, 0.0,
                                     node_miss ? node_detail : "sign changes equal the polynomial degree"));
        } catch (const std::exception& e) {
            out.push_back(failed_check("normalization", id, e));
        }
    }
    // Dirac first-order system
    try {
        double worst = 0.0;
        for (int kappa : {-1, 1, -2, 2})
            for (int nr = kappa > 0 ? 1 : 0; nr < 3; ++nr) {
                const DiracRadialPair pr = dirac_radial(nr, kappa, 0.3, 1.0);
                worst = std::max(worst, dirac_system_residual(pr, 0.05, 20.0 * (nr + 1)));
            }
        out.push_back(make_check("normalization", "dirac_coulomb.first_order_system", worst, tol.residual));
    } catch (const std::exception& e) {
        out.push_back(failed_check("normalization", "dirac_coulomb.first_order_system", e));
    }
    // Y_lm on the sphere
    try {
        double worst = 0.0;
        for (int l1 = 0; l1 <= 3; ++l1)
            for (int m1 = -l1; m1 <= l1; ++m1)
                for (int l2 = 0; l2 <= 3; ++l2)
                    for (int m2 = -l2; m2 <= l2; ++m2) {
                        const auto v = sphere_quadrature([&](double th, double ph) {
                            return spherical_harmonic(l1, m1, th, ph) * std::conj(spherical_harmonic(l2, m2, th, ph));
                        });
                        const double expect = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
                        worst = std::max(worst, std::abs(v - expect));
                    }
        out.push_back(make_check("normalization", "spherical_harmonics.sphere", worst, 1e-8, "l, l' <= 3"));
    } catch (const std::exception& e) {
        out.push_back(failed_check("normalization", "spherical_harmonics.sphere", e));
    }
    return out;
}

// ---------------------------------------------------------------- expansions

std::vector<CheckResult> verify_expansions(const Tolerances& tol) {
    std::vector<CheckResult> out;
    const std::vector<double> mus{0.1, 0.05, 0.025};
    auto fs = [&](FineStructureModel model, int nr, int lk, const char* label) {
        const std::string name = fmt(label, nr, lk);
        try {
            const FineStructureExpansion e = fine_structure_expansion_check(model, nr, lk, mus);
            const double err = std::max(rel_err(e.c2, e.expected_c2), rel_err(e.c4, e.expected_c4));
            out.push_back(make_check("expansions", name, err, tol.expansion,
                                     fmt("c2 = %.10g, c4 = %.10g", e.c2, e.c4)));
        } catch (const std::exception& ex) {
            out.push_back(failed_check("expansions", name, ex));
        }
    };
    fs(FineStructureModel::RelSchrodinger, 0, 0, "klein_gordon[n_r=%.0f,l=%.0f]");
    fs(FineStructureModel::RelSchrodinger, 1, 0, "klein_gordon[n_r=%.0f,l=%.0f]");
    fs(FineStructureModel::RelSchrodinger, 0, 1, "klein_gordon[n_r=%.0f,l=%.0f]");
    fs(FineStructureModel::RelSchrodinger, 2, 2, "klein_gordon[n_r=%.0f,l=%.0f]");
    fs(FineStructureModel::Dirac, 0, -1, "dirac[n_r=%.0f,kappa=%.0f]");
    fs(FineStructureModel::Dirac, 1, -1, "dirac[n_r=%.0f,kappa=%.0f]");
    fs(FineStructureModel::Dirac, 1, 1, "dirac[n_r=%.0f,kappa=%.0f]");
    fs(FineStructureModel::Dirac, 0, -2, "dirac[n_r=%.0f,kappa=%.0f]");
    fs(FineStructureModel::Dirac, 2, 2, "dirac[n_r=%.0f,kappa=%.0f]");

    // rotation expansions are third order in the displacement
    try {
        double worst = 0.0;
        for (double al : {1.5, 2.38, 4.0}) {
            const double r = morse_rotation_defect(al, 2e-3) / morse_rotation_defect(al, 1e-3);
            worst = std::max(worst, std::abs(r / 8.0 - 1.0));
        }
        out.push_back(make_check("expansions", "morse_rotation.third_order", worst, 1e-2, "defect(2x)/defect(x) vs 8"));
    } catch (const std::exception& e) {
        out.push_back(failed_check("expansions", "morse_rotation.third_order", e));
    }
    try {
        double worst = 0.0;
        for (double b : {1.5, 2.0, 4.5}) {
            const double x = 1e-3;
            worst = std::max(worst, rel_err(mod_hulthen_rotation_defect(b, x) / (x * x * x), mod_hulthen_rotation_cubic(b)));
        }
        out.push_back(make_check("expansions", "mod_hulthen_rotation.cubic", worst, 1e-2, "defect/x^3 vs leading coefficient"));
    } catch (const std::exception& e) {
        out.push_back(failed_check("expansions", "mod_hulthen_rotation.cubic", e));
    }

    // Laguerre product integrals against quadrature
    try {
        double worst = 0.0;
        for (double a : {0.5, 1.0, 2.5})
            for (double s : {-1.0, 0.0, 1.0, 2.0})
                for (int n = 0; n <= 5; ++n)
                    for (int m = 0; m <= 5; ++m) {
                        const double closed = laguerre_product_integral(n, m, s, a, a);
                        QuadOptions o;
                        o.abs_tol = 1e-13;
                        o.rel_tol = 1e-13;
                        o.breakpoints = {1.0, 5.0, 20.0};
                        const double q = quadrature(
                                             [&](double x) {
                                                 return std::exp(-x + (a + s) * std::log(x)) *
                                                        ortho_eval(Family::Laguerre, n, x, a) *
                                                        ortho_eval(Family::Laguerre, m, x, a);
                                             },
                                             Interval::half_line(0.0), o)
                                             .value;
                        const double scale = gamma_fn(a + s + 1.0 + std::max(n, m)) + std::abs(closed);
                        worst = std::max(worst, std::abs(closed - q) / scale);
                    }
        out.push_back(make_check("expansions", "laguerre_product_integral", worst, tol.integral,
                                 "n, m <= 5; s in {-1, 0, 1, 2}; alpha in {0.5, 1, 2.5}"));
        double spec = 0.0;
        for (double a : {0.5, 1.0, 2.5})
            for (int n = 0; n <= 5; ++n) {
                spec = std::max(spec, rel_err(laguerre_I1(n, a), laguerre_product_integral(n, n, 1.0, a, a)));
                for (int m = 0; m <= n; ++m)
                    spec = std::max(spec, rel_err(laguerre_Im1(m, a), laguerre_product_integral(n, m, -1.0, a, a)));
            }
        out.push_back(make_check("expansions", "laguerre_specializations", spec, 1e-12, "s = 1 diagonal and s = -1"));
    } catch (const std::exception& e) {
        out.push_back(failed_check("expansions", "laguerre_product_integral", e));
    }
    return out;
}

// ---------------------------------------------------------------- driver

std::optional<VerifyScope> parse_scope(std::string_view t) {
    if (t == "all") return VerifyScope::All;
    if (t == "tables") return VerifyScope::Tables;
    if (t == "oracle") return VerifyScope::Oracle;
    if (t == "normalization") return VerifyScope::Normalization;
    if (t == "expansions") return VerifyScope::Expansions;
    return std::nullopt;
}

std::string_view to_string(VerifyScope s) {
    switch (s) {
    case VerifyScope::All: return "all";
    case VerifyScope::Tables: return "tables";
    case VerifyScope::Oracle: return "oracle";
    case VerifyScope::Normalization: return "normalization";
    case VerifyScope::Expansions: return "expansions";
    }
    return "all";
}

namespace {

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !(v > 0.0) || !std::isfinite(v))
        fail(ErrorCode::InvalidParams, "bad tolerance value '" + std::string(s) + "'");
    return v;
}

} // namespace

Tolerances parse_tolerances(std::string_view text, Tolerances t) {
    if (text.empty()) return t;
    if (text.find('=') == std::string_view::npos) {
        const double f = parse_double(text);
        for (double* x : {&t.table, &t.quantization, &t.oracle_scale, &t.normalization, &t.orthogonality, &t.residual,
                          &t.expansion, &t.integral})
            *x *= f;
        return t;
    }
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) fail(ErrorCode::InvalidParams, "expected name=value in '" + std::string(item) + "'");
        const std::string_view key = item.substr(0, eq);
        const double v = parse_double(item.substr(eq + 1));
        if (key == "table") t.table = v;
        else if (key == "quantization") t.quantization = v;
        else if (key == "oracle_scale") t.oracle_scale = v;
        else if (key == "normalization") t.normalization = v;
        else if (key == "orthogonality") t.orthogonality = v;
        else if (key == "residual") t.residual = v;
        else if (key == "expansion") t.expansion = v;
        else if (key == "integral") t.integral = v;
        else fail(ErrorCode::InvalidParams, "unknown tolerance '" + std::string(key) + "'");
    }
    return t;
}

Tolerances tolerances_from_env() {
    const char* v = std::getenv("NU_SPECTRA_TOL");
    return v ? parse_tolerances(v) : Tolerances{};
}

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<const CheckResult*> VerifyReport::failures() const {
    std::vector<const CheckResult*> f;
    for (const auto& c : checks)
        if (!c.passed) f.push_back(&c);
    return f;
}

VerifyReport run_verification(VerifyScope scope, const Tolerances& tol) {
    VerifyReport r;
    r.scope = scope;
    auto add = [&](std::vector<CheckResult> v) { r.checks.insert(r.checks.end(), v.begin(), v.end()); };
    const bool all = scope == VerifyScope::All;
    if (all || scope == VerifyScope::Tables) add(verify_tables(tol));
    if (all || scope == VerifyScope::Oracle) add(verify_oracle(tol));
    if (all || scope == VerifyScope::Normalization) add(verify_normalization(tol));
    if (all || scope == VerifyScope::Expansions) add(verify_expansions(tol));
    return r;
}

} // namespace nuspectra
