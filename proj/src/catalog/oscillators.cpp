#include <cmath>
#include <numbers>

#include "common.hpp"

namespace nuspectra::detail {

namespace {

using std::numbers::pi;

class Harmonic1D final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::Harmonic1D; }
    std::string_view name() const override { return "harmonic_1d"; }
    std::string_view summary() const override { return "linear oscillator U = m w^2 x^2 / 2"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"hw", 1.0, false, Range::Positive, "quantum hbar*omega"},
                {"mw_hbar", 1.0, false, Range::Positive, "m*omega/hbar, inverse squared length"}};
    }
    std::string units() const override { return "hbar*omega scaled by hw"; }
    int level_count(const Params&) const override { return -1; }
    double energy(const Params& p, int n) const override { return get(p, "hw") * (n + 0.5); }

    NuEquation equation(const Params& p, double e) const override {
        const double eps = e / get(p, "hw");
        return {LowPoly(1.0), LowPoly(2.0 * eps, 0.0, -1.0), LowPoly(0.0), Interval::whole_line()};
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const double eps = e / get(p, "hw");
        return TableRow{2.0 * eps,         LowPoly(0.0, -1.0),          LowPoly(0.0, -2.0),
                        2.0 * eps - 1.0,   epp(LowPoly(0.0, 0.0, -0.5)), epp(LowPoly(0.0, 0.0, -1.0))};
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        const double s = std::sqrt(get(p, "mw_hbar"));
        CoordinateMap m;
        m.forward = [s](double x) { return s * x; };
        m.inverse = [s](double xi) { return xi / s; };
        m.jacobian = [s](double) { return s; };
        m.physical = m.mapped = Interval::whole_line();
        m.formula = "xi = x sqrt(m w / hbar)";
        return m;
    }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const double mw = get(p, "mw_hbar");
        const double sq = std::sqrt(mw);
        const double log_c = 0.25 * std::log(mw / pi) - 0.5 * (n * std::numbers::ln2 + log_factorial(n));
        s.normalization = std::exp(log_c);
        s.components = {[=](double x) {
            const double xi = sq * x;
            return damp(std::exp(log_c - 0.5 * xi * xi), hermite(n, xi));
        }};
        s.domain = Interval::whole_line();
        s.breakpoints = {0.0};
        s.u_mapped = [n](double xi) { return damp(std::exp(-0.5 * xi * xi), hermite(n, xi)); };
        s.polynomial = [n](double xi) { return hermite(n, xi); };
        s.mapped_domain = Interval::whole_line();
        const double w = std::sqrt(2.0 * n + 1.0) + 2.5;
        s.residual_window = Interval::open(-w, w);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"hw", 1.0}, {"mw_hbar", 1.0}}, 0},
                {{{"hw", 2.5}, {"mw_hbar", 0.7}}, 3},
                {{{"hw", 0.3}, {"mw_hbar", 4.0}}, 6}};
    }
};

class SphericalHarmonics final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::SphericalHarmonics; }
    std::string_view name() const override { return "spherical_harmonics"; }
    std::string_view summary() const override { return "angular momentum eigenfunctions Y_lm, eigenvalue l(l+1)"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"m", 0.0, true, Range::Any, "magnetic quantum number"}};
    }
    std::string units() const override { return "hbar^2"; }
    std::string level_label() const override { return "l"; }
    int first_level(const Params& p) const override { return std::abs(get_int(p, "m")); }
    int level_count(const Params&) const override { return -1; }
    double energy(const Params&, int l) const override { return l * (l + 1.0); }
    QuantumNumbers quantum_numbers(const Params& p, int l) const override { return {{"l", l}, {"m", get_int(p, "m")}}; }

    NuEquation equation(const Params& p, double mu) const override {
        const double m2 = std::pow(get(p, "m"), 2);
        NuEquation eq{LowPoly(1.0, 0.0, -1.0), LowPoly(mu - m2, 0.0, -mu), LowPoly(0.0, -2.0), Interval::open(-1.0, 1.0)};
        eq.endpoint_rules = {EndpointRule::Bounded, EndpointRule::Bounded};
        return eq;
    }
    std::optional<TableRow> table_row(const Params& p, double mu) const override {
        const double m = std::abs(get(p, "m"));
        return TableRow{mu - m * m,
                        LowPoly(0.0, -m),
                        LowPoly(0.0, -2.0 * (m + 1.0)),
                        mu - m * (m + 1.0),
                        epp(LowPoly(0.0), {{-1.0, 0.5 * m}, {1.0, 0.5 * m}}),
                        epp(LowPoly(0.0), {{-1.0, m}, {1.0, m}})};
    }
    CoordinateMap coordinate_map(const Params&) const override {
        CoordinateMap m;
        m.forward = [](double t) { return std::cos(t); };
        m.inverse = [](double xi) { return std::acos(xi); };
        m.jacobian = [](double t) { return -std::sin(t); };
        m.physical = Interval::open(0.0, pi);
        m.mapped = Interval::open(-1.0, 1.0);
        m.formula = "xi = cos(theta)";
        return m;
    }
    /// Polar factor Theta_lm(theta), normalised with weight sin(theta).
    BoundState state(const Params& p, int l) const override {
        BoundState s = base_state(*this, p, l);
        const int m = get_int(p, "m");
        const int am = std::abs(m);
        const int deg = l - am;
        const double sign = (m >= 0 && m % 2 != 0) ? -1.0 : 1.0;
        const double c = sign * std::exp(0.5 * (std::log(l + 0.5) + log_factorial(l - m) + log_factorial(l + m)) -
                                          am * std::numbers::ln2 - log_factorial(l));
        s.normalization = c;
        s.components = {[=](double t) { return c * std::pow(std::sin(t), am) * jacobi(deg, am, am, std::cos(t)); }};
        s.weight = [](double t) { return std::sin(t); };
        s.weight_formula = "sin(theta)";
        s.domain = Interval::open(0.0, pi);
        s.u_mapped = [=](double xi) { return std::pow(1.0 - xi * xi, 0.5 * am) * jacobi(deg, am, am, xi); };
        s.polynomial = [=](double xi) { return jacobi(deg, am, am, xi); };
        s.mapped_domain = Interval::open(-1.0, 1.0);
        s.residual_window = Interval::open(-0.95, 0.95);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"m", 0.0}}, 2}, {{{"m", 2.0}}, 2}, {{{"m", -1.0}}, 4}, {{{"m", 3.0}}, 5}};
    }
};

/// Shared radial helper for the two r^2-type problems: u(xi) = xi^e exp(-xi/2) L_n^B(xi).
double radial_square(double xi, int n, double b, double log_c) {
    if (xi <= 0.0) return 0.0;
    return damp(std::exp(log_c + 0.5 * (b + 0.5) * std::log(xi) - 0.5 * xi), laguerre(n, b, xi));
}

class Confinement3D final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::Confinement3D; }
    std::string_view name() const override { return "confinement_3d"; }
    std::string_view summary() const override { return "3D confinement U = V0 (r/a - a/r)^2"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"V0", 1.0, false, Range::Positive, "depth scale"},
                {"a", 1.0, false, Range::Positive, "position of the minimum"},
                {"h2m", 1.0, false, Range::Positive, "hbar^2/2m"},
                {"l", 0.0, true, Range::NonNegative, "orbital quantum number"}};
    }
    std::string units() const override { return "energy (units of V0)"; }
    int level_count(const Params&) const override { return -1; }
    QuantumNumbers quantum_numbers(const Params& p, int n) const override { return {{"n", n}, {"l", get_int(p, "l")}}; }

    struct Derived {
        double alpha, B, h2m, V0, l;
    };
    static Derived derived(const Params& p) {
        const double V0 = get(p, "V0"), a = get(p, "a"), h2m = get(p, "h2m"), l = get(p, "l");
        const double alpha = std::sqrt(V0 / h2m) / a;
        return {alpha, std::sqrt(alpha * alpha * std::pow(a, 4) + std::pow(l + 0.5, 2)), h2m, V0, l};
    }
    double energy(const Params& p, int n) const override {
        const Derived d = derived(p);
        return 2.0 * d.alpha * d.h2m * (2.0 * n + 1.0 + d.B) - 2.0 * d.V0;
    }
    NuEquation equation(const Params& p, double e) const override {
        const Derived d = derived(p);
        const double a4 = std::pow(get(p, "a"), 4);
        return {LowPoly(0.0, 1.0),
                0.25 * LowPoly(-d.alpha * d.alpha * a4 - d.l * (d.l + 1.0), (e + 2.0 * d.V0) / (d.alpha * d.h2m), -1.0),
                LowPoly(0.5), Interval::half_line(0.0)};
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const Derived d = derived(p);
        const double P = (e + 2.0 * d.V0) / (2.0 * d.alpha * d.h2m);
        const double k = 0.5 * (P - d.B);
        return TableRow{k,
                        LowPoly(0.25 + 0.5 * d.B, -0.5),
                        LowPoly(1.0 + d.B, -1.0),
                        k - 0.5,
                        epp(LowPoly(0.0, -0.5), {{0.0, 0.5 * (d.B + 0.5)}}),
                        epp(LowPoly(0.0, -1.0), {{0.0, d.B}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        const double al = derived(p).alpha;
        CoordinateMap m;
        m.forward = [al](double r) { return al * r * r; };
        m.inverse = [al](double xi) { return std::sqrt(xi / al); };
        m.jacobian = [al](double r) { return 2.0 * al * r; };
        m.physical = m.mapped = Interval::half_line(0.0);
        m.formula = "xi = alpha r^2";
        return m;
    }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const Derived d = derived(p);
        const double log_c = 0.5 * (std::numbers::ln2 + log_factorial(n) + 0.5 * std::log(d.alpha) - log_gamma(d.B + n + 1.0));
        const double al = d.alpha, B = d.B;
        s.normalization = std::exp(log_c);
        s.components = {[=](double r) { return radial_square(al * r * r, n, B, log_c); }};
        s.domain = Interval::half_line(0.0);
        s.breakpoints = {std::sqrt((2.0 * n + B + 1.0) / al)};
        s.u_mapped = [=](double xi) { return radial_square(xi, n, B, 0.0); };
        s.polynomial = [=](double xi) { return laguerre(n, B, xi); };
        s.mapped_domain = Interval::half_line(0.0);
        s.residual_window = Interval::open(0.02, 4.0 * n + 2.0 * B + 20.0);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"V0", 1.0}, {"a", 1.0}, {"h2m", 1.0}, {"l", 0.0}}, 0},
                {{{"V0", 3.0}, {"a", 0.8}, {"h2m", 0.5}, {"l", 2.0}}, 2},
                {{{"V0", 0.4}, {"a", 2.0}, {"h2m", 1.5}, {"l", 1.0}}, 4}};
    }
};

class Oscillator3D final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::Oscillator3D; }
    std::string_view name() const override { return "oscillator_3d"; }
    std::string_view summary() const override { return "isotropic 3D oscillator, radial problem"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"hw", 1.0, false, Range::Positive, "quantum hbar*omega"},
                {"mw_hbar", 1.0, false, Range::Positive, "m*omega/hbar"},
                {"l", 0.0, true, Range::NonNegative, "orbital quantum number"}};
    }
    std::string units() const override { return "hbar*omega scaled by hw"; }
    int level_count(const Params&) const override { return -1; }
    QuantumNumbers quantum_numbers(const Params& p, int n) const override { return {{"n", n}, {"l", get_int(p, "l")}}; }
    double energy(const Params& p, int n) const override { return get(p, "hw") * (2.0 * n + get(p, "l") + 1.5); }

    NuEquation equation(const Params& p, double e) const override {
        const double eps = e / get(p, "hw"), l = get(p, "l");
        return {LowPoly(0.0, 1.0), 0.25 * LowPoly(-l * (l + 1.0), 2.0 * eps, -1.0), LowPoly(0.5),
                Interval::half_line(0.0)};
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const double eps = e / get(p, "hw"), l = get(p, "l");
        return TableRow{-0.5 * (l + 0.5 - eps),
                        LowPoly(0.5 * (l + 1.0), -0.5),
                        LowPoly(l + 1.5, -1.0),
                        -0.5 * (l + 1.5 - eps),
                        epp(LowPoly(0.0, -0.5), {{0.0, 0.5 * (l + 1.0)}}),
                        epp(LowPoly(0.0, -1.0), {{0.0, l + 0.5}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        const double mu = get(p, "mw_hbar");
        CoordinateMap m;
        m.forward = [mu](double r) { return mu * r * r; };
        m.inverse = [mu](double xi) { return std::sqrt(xi / mu); };
        m.jacobian = [mu](double r) { return 2.0 * mu * r; };
        m.physical = m.mapped = Interval::half_line(0.0);
        m.formula = "xi = (m w / hbar) r^2";
        return m;
    }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const double mu = get(p, "mw_hbar"), l = get(p, "l");
        const double B = l + 0.5;
        const double log_c = 0.5 * (std::numbers::ln2 + log_factorial(n) + 0.5 * std::log(mu) - log_gamma(l + n + 1.5));
        s.normalization = std::exp(log_c);
        s.components = {[=](double r) { return radial_square(mu * r * r, n, B, log_c); }};
        s.domain = Interval::half_line(0.0);
        s.breakpoints = {std::sqrt((2.0 * n + l + 1.5) / mu)};
        s.u_mapped = [=](double xi) { return radial_square(xi, n, B, 0.0); };
        s.polynomial = [=](double xi) { return laguerre(n, B, xi); };
        s.mapped_domain = Interval::half_line(0.0);
        s.residual_window = Interval::open(0.02, 4.0 * n + 2.0 * l + 20.0);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"hw", 1.0}, {"mw_hbar", 1.0}, {"l", 0.0}}, 0},
                {{{"hw", 2.0}, {"mw_hbar", 0.5}, {"l", 1.0}}, 2},
                {{{"hw", 0.7}, {"mw_hbar", 3.0}, {"l", 3.0}}, 5}};
    }
};

} // namespace

std::unique_ptr<PotentialModel> make_harmonic_1d() { return std::make_unique<Harmonic1D>(); }
std::unique_ptr<PotentialModel> make_spherical_harmonics() { return std::make_unique<SphericalHarmonics>(); }
std::unique_ptr<PotentialModel> make_confinement_3d() { return std::make_unique<Confinement3D>(); }
std::unique_ptr<PotentialModel> make_oscillator_3d() { return std::make_unique<Oscillator3D>(); }

} // namespace nuspectra::detail
