#include <cmath>
#include <numbers>

#include "common.hpp"

namespace nuspectra::detail {

namespace {

/// log cosh(y) for any real y without overflow.
double log_cosh(double y) {
    const double t = std::abs(y);
    return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

class PoschlTeller final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::PoschlTeller; }
    std::string_view name() const override { return "poschl_teller"; }
    std::string_view summary() const override {
        return "Poschl-Teller well U = h2m alpha^2 (a(a-1)/sin^2(alpha x) + b(b-1)/cos^2(alpha x))";
    }
    std::vector<ParamSpec> param_specs() const override {
        return {{"a", 2.0, false, Range::AboveOne, "strength at x = 0"},
                {"b", 2.0, false, Range::AboveOne, "strength at x = pi/(2 alpha)"},
                {"alpha", 1.0, false, Range::Positive, "inverse width"},
                {"h2m", 1.0, false, Range::Positive, "hbar^2/2m"}};
    }
    std::string units() const override { return "energy (units of h2m alpha^2 scale)"; }
    int level_count(const Params&) const override { return -1; }
    double energy(const Params& p, int n) const override {
        return get(p, "h2m") * std::pow(get(p, "alpha") * (get(p, "a") + get(p, "b") + 2.0 * n), 2);
    }
    NuEquation equation(const Params& p, double e) const override {
        const double a = get(p, "a"), b = get(p, "b");
        const double c = e / (get(p, "h2m") * std::pow(get(p, "alpha"), 2));
        return {LowPoly(0.0, 1.0, -1.0), -0.25 * LowPoly(a * (a - 1.0), -(c + (a - b) * (a + b - 1.0)), c),
                LowPoly(0.5, -1.0), Interval::open(0.0, 1.0)};
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const double a = get(p, "a"), b = get(p, "b");
        const double c = e / (get(p, "h2m") * std::pow(get(p, "alpha"), 2));
        return TableRow{0.25 * (c - (a + b) * (a + b - 2.0)),
                        LowPoly(0.5 * a, -0.5 * (a + b)),
                        LowPoly(a + 0.5, -(a + b + 1.0)),
                        0.25 * (c - (a + b) * (a + b)),
                        epp(LowPoly(0.0), {{0.0, 0.5 * a}, {1.0, 0.5 * b}}),
                        epp(LowPoly(0.0), {{0.0, a - 0.5}, {1.0, b - 0.5}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        const double al = get(p, "alpha");
        CoordinateMap m;
        m.forward = [al](double x) { return std::pow(std::sin(al * x), 2); };
        m.inverse = [al](double xi) { return std::asin(std::sqrt(xi)) / al; };
        m.jacobian = [al](double x) { return al * std::sin(2.0 * al * x); };
        m.physical = Interval::open(0.0, std::numbers::pi / (2.0 * al));
        m.mapped = Interval::open(0.0, 1.0);
        m.formula = "xi = sin^2(alpha x)";
        return m;
    }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const double a = get(p, "a"), b = get(p, "b"), al = get(p, "alpha");
        // C^2 = 2 alpha n! (a+b+2n) Gamma(a+b+n) / (Gamma(a+n+1/2) Gamma(b+n+1/2))
        const double log_c = 0.5 * (std::log(2.0 * al) + log_factorial(n) + std::log(a + b + 2.0 * n) +
                                    log_gamma(a + b + n) - log_gamma(a + n + 0.5) - log_gamma(b + n + 0.5));
        const double c = std::exp(log_c);
        s.normalization = c;
        s.components = {[=](double x) {
            const double t = al * x;
            return c * std::pow(std::sin(t), a) * std::pow(std::cos(t), b) * jacobi(n, a - 0.5, b - 0.5, std::cos(2.0 * t));
        }};
        s.domain = Interval::open(0.0, std::numbers::pi / (2.0 * al));
        s.u_mapped = [=](double xi) {
            return std::pow(xi, 0.5 * a) * std::pow(1.0 - xi, 0.5 * b) * jacobi(n, a - 0.5, b - 0.5, 1.0 - 2.0 * xi);
        };
        s.polynomial = [=](double xi) { return jacobi(n, a - 0.5, b - 0.5, 1.0 - 2.0 * xi); };
        s.mapped_domain = Interval::open(0.0, 1.0);
        s.residual_window = inner_window(0.0, 1.0, 0.03);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"a", 2.0}, {"b", 2.0}, {"alpha", 1.0}, {"h2m", 1.0}}, 0},
                {{{"a", 1.5}, {"b", 3.0}, {"alpha", 0.5}, {"h2m", 1.0}}, 2},
                {{{"a", 4.2}, {"b", 1.3}, {"alpha", 2.0}, {"h2m", 0.5}}, 5}};
    }
};

class ModPoschlTeller final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::ModPoschlTeller; }
    std::string_view name() const override { return "mod_poschl_teller"; }
    std::string_view summary() const override {
        return "modified Poschl-Teller well U = -h2m alpha^2 a(a-1)/cosh^2(alpha x), even states";
    }
    std::vector<ParamSpec> param_specs() const override {
        return {{"a", 4.0, false, Range::AboveOne, "well strength"},
                {"alpha", 1.0, false, Range::Positive, "inverse width"},
                {"h2m", 1.0, false, Range::Positive, "hbar^2/2m"}};
    }
    std::string units() const override { return "energy (units of h2m alpha^2 scale)"; }
    int level_count(const Params& p) const override {
        const double top = 0.5 * (get(p, "a") - 1.0);
        int count = 0;
        while (count < top) ++count;
        return count;
    }
    double energy(const Params& p, int n) const override {
        return -get(p, "h2m") * std::pow(get(p, "alpha") * (get(p, "a") - 1.0 - 2.0 * n), 2);
    }
    NuEquation equation(const Params& p, double e) const override {
        const double a = get(p, "a");
        const double c = -e / (get(p, "h2m") * std::pow(get(p, "alpha"), 2));
        NuEquation eq{LowPoly(0.0, 1.0, -1.0), 0.25 * LowPoly(-a * (a - 1.0), c + a * (a - 1.0), -c), LowPoly(0.5, -1.0),
                      Interval::half_line(1.0)};
        eq.endpoint_rules = {EndpointRule::Analytic, EndpointRule::Auto};
        return eq;
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const double a = get(p, "a");
        const double c = -e / (get(p, "h2m") * std::pow(get(p, "alpha"), 2));
        return TableRow{0.25 * (c + 1.0 - a * a),
                        LowPoly(0.5 * (1.0 - a), 0.5 * (a - 1.0)),
                        LowPoly(1.5 - a, a - 2.0),
                        0.25 * (c - (a - 1.0) * (a - 1.0)),
                        epp(LowPoly(0.0), {{0.0, 0.5 * (1.0 - a)}}),
                        epp(LowPoly(0.0), {{0.0, 0.5 - a}, {1.0, -0.5}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        const double al = get(p, "alpha");
        CoordinateMap m;
        m.forward = [al](double x) { return std::pow(std::cosh(al * x), 2); };
        m.inverse = [al](double xi) { return std::acosh(std::sqrt(xi)) / al; };
        m.jacobian = [al](double x) { return al * std::sinh(2.0 * al * x); };
        m.physical = Interval::half_line(0.0);
        m.mapped = Interval::half_line(1.0);
        m.formula = "xi = cosh^2(alpha x)";
        return m;
    }
    /// Even eigenfunction of the full line; level n is the 2n-th state.
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const double a = get(p, "a"), al = get(p, "alpha");
        const double log_c = 0.5 * std::log(al) + 0.5 * (log_factorial(n) + std::log(a - 1.0 - 2.0 * n) +
                                                         log_gamma(a - n - 0.5) - log_gamma(n + 0.5) - log_gamma(a - n));
        s.normalization = std::exp(log_c);
        s.components = {[=](double x) {
            const double y = al * x;
            const double env = std::exp(log_c + (1.0 - a) * log_cosh(y));
            const double arg = 2.0 * std::exp(2.0 * log_cosh(y)) - 1.0;
            return damp(env, jacobi(n, -0.5, 0.5 - a, arg));
        }};
        s.domain = Interval::whole_line();
        s.breakpoints = {0.0};
        s.u_mapped = [=](double xi) { return std::pow(xi, 0.5 * (1.0 - a)) * jacobi(n, -0.5, 0.5 - a, 2.0 * xi - 1.0); };
        s.polynomial = [=](double xi) { return jacobi(n, -0.5, 0.5 - a, 2.0 * xi - 1.0); };
        s.mapped_domain = Interval::half_line(1.0);
        s.residual_window = Interval::open(1.02, 60.0);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"a", 4.0}, {"alpha", 1.0}, {"h2m", 1.0}}, 0},
                {{{"a", 4.0}, {"alpha", 1.0}, {"h2m", 1.0}}, 1},
                {{{"a", 7.3}, {"alpha", 0.6}, {"h2m", 2.0}}, 2}};
    }
};

} // namespace

std::unique_ptr<PotentialModel> make_poschl_teller() { return std::make_unique<PoschlTeller>(); }
std::unique_ptr<PotentialModel> make_mod_poschl_teller() { return std::make_unique<ModPoschlTeller>(); }

} // namespace nuspectra::detail
