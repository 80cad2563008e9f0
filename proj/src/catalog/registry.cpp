#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "common.hpp"

namespace nuspectra {

namespace detail {

double get(const Params& p, const char* key) {
    auto it = p.find(key);
    if (it == p.end()) fail(ErrorCode::InvalidParams, std::string("missing parameter ") + key);
    return it->second;
}

int get_int(const Params& p, const char* key) { return static_cast<int>(std::lround(get(p, key))); }

ExpPowerProduct epp(LowPoly exponent, std::vector<PowerFactor> factors) {
    ExpPowerProduct e;
    e.exponent = exponent;
    e.factors = std::move(factors);
    return e;
}

CoordinateMap identity_map(const Interval& domain, double scale) {
    CoordinateMap m;
    m.forward = [scale](double x) { return x / scale; };
    m.inverse = [scale](double t) { return t * scale; };
    m.jacobian = [scale](double) { return 1.0 / scale; };
    m.physical = domain;
    m.mapped = domain;
    m.formula = scale == 1.0 ? "x" : "x/s";
    return m;
}

BoundState base_state(const PotentialModel& m, const Params& p, int level) {
    m.require_bound(p, level);
    BoundState s;
    s.potential = std::string(m.name());
    s.quantum_numbers = m.quantum_numbers(p, level);
    s.energy = m.energy(p, level);
    s.units = m.units();
    s.polynomial_degree = m.nu_degree(p, level);
    return s;
}

Interval inner_window(double lo, double hi, double margin) {
    const double span = hi - lo;
    return Interval::open(lo + margin * span, hi - margin * span);
}

} // namespace detail

std::string_view to_string(Range r) {
    switch (r) {
    case Range::Any: return "any";
    case Range::Positive: return "> 0";
    case Range::NonNegative: return ">= 0";
    case Range::AboveOne: return "> 1";
    }
    return "any";
}

void PotentialModel::check(const Params&) const {}

Params PotentialModel::resolve(const Params& user) const {
    Params in = user;
    apply_aliases(in);
    const auto specs = param_specs();
    for (const auto& [key, value] : in) {
        const bool known = std::any_of(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.name == key; });
        if (!known) fail(ErrorCode::InvalidParams, "unknown parameter '" + key + "' for " + std::string(name()));
        if (!std::isfinite(value)) fail(ErrorCode::InvalidParams, "parameter '" + key + "' is not finite");
    }
    Params out;
    for (const auto& s : specs) {
        auto it = in.find(s.name);
        const double v = it == in.end() ? s.default_value : it->second;
        if (s.integer && v != std::round(v)) fail(ErrorCode::InvalidParams, "parameter '" + s.name + "' must be an integer");
        bool ok = true;
        switch (s.range) {
        case Range::Any: break;
        case Range::Positive: ok = v > 0.0; break;
        case Range::NonNegative: ok = v >= 0.0; break;
        case Range::AboveOne: ok = v > 1.0; break;
        }
        if (!ok) fail(ErrorCode::InvalidParams, "parameter '" + s.name + "' must be " + std::string(to_string(s.range)));
        out[s.name] = v;
    }
    check(out);
    return out;
}

QuantumNumbers PotentialModel::quantum_numbers(const Params&, int level) const { return {{level_label(), level}}; }

void PotentialModel::require_bound(const Params& p, int level) const {
    const int count = level_count(p);
    if (count == 0) fail(ErrorCode::NoBoundStates, empty_spectrum_message(p));
    const int first = first_level(p);
    if (level < first || (count > 0 && level >= first + count)) {
        std::string range = count > 0 ? std::to_string(first) + ".." + std::to_string(first + count - 1)
                                      : std::to_string(first) + "..";
        fail(ErrorCode::LevelNotBound,
             level_label() + " = " + std::to_string(level) + " outside the bound range " + range);
    }
}

const std::vector<const PotentialModel*>& all_models() {
    static const auto owned = [] {
        std::vector<std::unique_ptr<PotentialModel>> v;
        v.push_back(detail::make_harmonic_1d());
        v.push_back(detail::make_bessel());
        v.push_back(detail::make_spherical_harmonics());
        v.push_back(detail::make_coulomb());
        v.push_back(detail::make_rel_schrodinger());
        v.push_back(detail::make_dirac_coulomb());
        v.push_back(detail::make_confinement_3d());
        v.push_back(detail::make_oscillator_3d());
        v.push_back(detail::make_poschl_teller());
        v.push_back(detail::make_mod_poschl_teller());
        v.push_back(detail::make_kratzer());
        v.push_back(detail::make_hulthen());
        v.push_back(detail::make_morse());
        v.push_back(detail::make_morse_rotation());
        v.push_back(detail::make_mod_hulthen());
        v.push_back(detail::make_mod_hulthen_rotation());
        v.push_back(detail::make_generalized_morse());
        v.push_back(detail::make_generalized_morse_via_hulthen());
        return v;
    }();
    static const auto view = [] {
        std::vector<const PotentialModel*> v;
        for (const auto& m : owned) v.push_back(m.get());
        return v;
    }();
    return view;
}

const PotentialModel& model(PotentialId id) {
    for (const auto* m : all_models())
        if (m->id() == id) return *m;
    fail(ErrorCode::InvalidParams, "unregistered potential id");
}

const PotentialModel& model(std::string_view name) {
    for (const auto* m : all_models())
        if (m->name() == name) return *m;
    fail(ErrorCode::InvalidParams, "unknown potential '" + std::string(name) + "'");
}

std::string_view id_name(PotentialId id) { return model(id).name(); }

Spectrum spectrum(PotentialId id, const Params& params, int first, int last) {
    const PotentialModel& m = model(id);
    const Params p = m.resolve(params);
    Spectrum out;
    out.units = m.units();
    out.level_count = m.level_count(p);
    if (out.level_count == 0) fail(ErrorCode::NoBoundStates, m.empty_spectrum_message(p));
    const int lo = std::max(first, m.first_level(p));
    int hi = last;
    if (out.level_count > 0) {
        const int top = m.first_level(p) + out.level_count - 1;
        if (hi > top) {
            out.truncated = true;
            hi = top;
        }
    }
    for (int level = lo; level <= hi; ++level) out.levels.push_back({m.quantum_numbers(p, level), m.energy(p, level)});
    return out;
}

BoundState eigenstate(PotentialId id, const Params& params, int level) {
    const PotentialModel& m = model(id);
    return m.state(m.resolve(params), level);
}

double quantization_energy(const PotentialModel& m, const Params& p, int level) {
    m.require_bound(p, level);
    const int n = m.nu_degree(p, level);
    const double target = m.quantization_target(p, level);

    // Bracket: a quarter of the distance to the nearest neighbouring level.
    const int first = m.first_level(p);
    const int count = m.level_count(p);
    double spacing = std::numeric_limits<double>::infinity();
    if (level > first) spacing = std::min(spacing, std::abs(target - m.quantization_target(p, level - 1)));
    if (count < 0 || level + 1 < first + count)
        spacing = std::min(spacing, std::abs(m.quantization_target(p, level + 1) - target));
    if (!std::isfinite(spacing)) spacing = std::max(std::abs(target), 1e-3);
    auto g = [&](double e) {
        const NuEquation eq = m.quantization_equation(p, e);
        const NuBranch b = select_bound_state_branch(eq);
        return b.lambda - quantized_lambda(b.tau, eq.sigma, n);
    };
    // Near the continuum edge the bracket would leave the bound range, where
    // no real k exists; shrink it until both ends reduce.
    double half = 0.25 * spacing;
    for (int tries = 0;; ++tries) {
        try {
            (void)g(target - half);
            (void)g(target + half);
            break;
        } catch (const Error&) {
            if (tries == 30) throw;
            half *= 0.5;
        }
    }
    const double lo = target - half, hi = target + half;

    constexpr int samples = 17;
    std::array<double, samples> gv{};
    for (int i = 0; i < samples; ++i) gv[i] = g(lo + (hi - lo) * i / (samples - 1));
    const double dir = gv.back() - gv.front();
    for (int i = 1; i < samples; ++i)
        if ((gv[i] - gv[i - 1]) * dir <= 0.0)
            fail(ErrorCode::NonMonotone, "lambda(E) - lambda_n is not monotone around the level");
    if (gv.front() * gv.back() > 0.0) fail(ErrorCode::NoSolution, "no sign change of lambda(E) - lambda_n in the bracket");

    double a = lo, b = hi, ga = gv.front();
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a + b); ++it) {
        const double c = 0.5 * (a + b);
        const double gc = g(c);
        if (gc == 0.0) return c;
        if ((gc < 0.0) == (ga < 0.0)) {
            a = c;
            ga = gc;
        } else {
            b = c;
        }
    }
    return 0.5 * (a + b);
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || std::abs(m) > l) fail(ErrorCode::DomainError, "spherical harmonic needs |m| <= l");
    const int am = std::abs(m);
    const double sign = (m >= 0 && m % 2 != 0) ? -1.0 : 1.0;
    const double log_n = 0.5 * (std::log((2.0 * l + 1.0) / (4.0 * std::numbers::pi)) + log_factorial(l - m) +
                                log_factorial(l + m)) -
                         am * std::numbers::ln2 - log_factorial(l);
    const double s = std::sin(theta);
    const double radial = sign * std::exp(log_n) * std::pow(s, am) * detail::jacobi(l - am, am, am, std::cos(theta));
    return std::polar(1.0, m * phi) * radial;
}

namespace {

double poly_gap(const LowPoly& a, const LowPoly& b) {
    double g = 0.0;
    for (int i = 0; i < 3; ++i) g = std::max(g, std::abs(a.c[i] - b.c[i]));
    return g;
}

double epp_gap(const ExpPowerProduct& a, const ExpPowerProduct& b) {
    double g = 0.0;
    for (int i = 1; i < 3; ++i)
        g = std::max(g, std::abs(a.exponent.c[i] - b.exponent.c[i]) / std::max(1.0, std::abs(b.exponent.c[i])));
    auto compare = [&](const ExpPowerProduct& x, const ExpPowerProduct& y) {
        for (const auto& f : y.factors) {
            const double p = x.power_at(f.root);
            g = std::max(g, std::abs(p - y.power_at(f.root)) / std::max(1.0, std::abs(f.power)));
        }
    };
    compare(a, b);
    compare(b, a);
    return g;
}

} // namespace

double table_mismatch(const NuEquation& eq, const NuBranch& b, const TableRow& row) {
    const double scale =
        std::max({eq.sigma.max_abs(), eq.sigma_tilde.max_abs(), eq.tau_tilde.max_abs(), std::abs(row.k),
                  row.pi.max_abs(), std::numeric_limits<double>::min()});
    double g = std::abs(b.k - row.k);
    g = std::max(g, poly_gap(b.pi, row.pi));
    g = std::max(g, poly_gap(b.tau, row.tau));
    g = std::max(g, std::abs(b.lambda - row.lambda));
    g /= scale;
    g = std::max(g, epp_gap(b.phi, row.phi));
    g = std::max(g, epp_gap(b.rho, row.rho));
    return g;
}

} // namespace nuspectra
