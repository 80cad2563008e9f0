#include <cmath>
#include <numbers>

#include "common.hpp"
#include "nuspectra/constants.hpp"
#include "nuspectra/relativistic.hpp"

namespace nuspectra::detail {

namespace {

/// x^p e^(-c x) L_n^alpha(2 c' x) with the prefactor kept in log space.
double laguerre_radial(double x, double log_c, double p, double c, int n, double alpha, double lag_scale) {
    if (x <= 0.0) return 0.0;
    return damp(std::exp(log_c + p * std::log(x) - c * x), laguerre(n, alpha, lag_scale * x));
}

CoordinateMap scaled_half_line(double scale, std::string formula) {
    CoordinateMap m;
    m.forward = [scale](double r) { return r / scale; };
    m.inverse = [scale](double x) { return x * scale; };
    m.jacobian = [scale](double) { return 1.0 / scale; };
    m.physical = m.mapped = Interval::half_line(0.0);
    m.formula = std::move(formula);
    return m;
}

void alias_z_to_mu(Params& p) {
    auto z = p.find("Z");
    if (z == p.end()) return;
    if (p.count("mu")) fail(ErrorCode::InvalidParams, "give either Z or mu, not both");
    p["mu"] = z->second * constants::fine_structure;
    p.erase(z);
}

class Coulomb final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::Coulomb; }
    std::string_view name() const override { return "coulomb"; }
    std::string_view summary() const override { return "nonrelativistic hydrogen-like atom, U = -Z e^2 / r"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"Z", 1.0, false, Range::Positive, "nuclear charge"},
                {"a0", 1.0, false, Range::Positive, "Bohr radius hbar^2/(m e^2)"},
                {"l", 0.0, true, Range::NonNegative, "orbital quantum number"}};
    }
    std::string units() const override { return "e^2/a0"; }
    std::string level_label() const override { return "n_r"; }
    int level_count(const Params&) const override { return -1; }
    QuantumNumbers quantum_numbers(const Params& p, int nr) const override {
        const int l = get_int(p, "l");
        return {{"n_r", nr}, {"l", l}, {"n", nr + l + 1}};
    }
    double energy(const Params& p, int nr) const override {
        const double n = nr + get(p, "l") + 1.0;
        return -std::pow(get(p, "Z"), 2) / (2.0 * n * n);
    }
    NuEquation equation(const Params& p, double e0) const override {
        const double l = get(p, "l");
        return {LowPoly(0.0, 1.0), LowPoly(-l * (l + 1.0), 2.0 * get(p, "Z"), 2.0 * e0), LowPoly(0.0),
                Interval::half_line(0.0)};
    }
    std::optional<TableRow> table_row(const Params& p, double e0) const override {
        if (e0 >= 0.0) return std::nullopt;
        const double l = get(p, "l"), Z = get(p, "Z"), s = std::sqrt(-2.0 * e0);
        return TableRow{2.0 * Z - (2.0 * l + 1.0) * s,
                        LowPoly(l + 1.0, -s),
                        LowPoly(2.0 * l + 2.0, -2.0 * s),
                        2.0 * (Z - (l + 1.0) * s),
                        epp(LowPoly(0.0, -s), {{0.0, l + 1.0}}),
                        epp(LowPoly(0.0, -2.0 * s), {{0.0, 2.0 * l + 1.0}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override { return scaled_half_line(get(p, "a0"), "x = r/a0"); }
    BoundState state(const Params& p, int nr) const override {
        BoundState s = base_state(*this, p, nr);
        const int l = get_int(p, "l");
        const double Z = get(p, "Z"), a0 = get(p, "a0");
        const int n = nr + l + 1;
        // R = 2/n^2 (Z/a0)^(3/2) sqrt((n-l-1)!/(n+l)!) eta^l e^(-eta/2) L(eta), eta = 2 Z r/(n a0)
        const double k = 2.0 * Z / (n * a0);
        const double log_c = std::log(2.0 / (double(n) * n)) + 1.5 * std::log(Z / a0) +
                             0.5 * (log_factorial(nr) - log_factorial(n + l)) + l * std::log(k);
        s.normalization = std::exp(log_c);
        s.components = {[=](double r) { return laguerre_radial(r, log_c, l, 0.5 * k, nr, 2.0 * l + 1.0, k); }};
        s.weight = [](double r) { return r * r; };
        s.weight_formula = "r^2";
        s.domain = Interval::half_line(0.0);
        s.breakpoints = {double(n) * n * a0 / Z, 3.0 * n * n * a0 / Z};
        const double c = Z / n;
        s.u_mapped = [=](double x) { return laguerre_radial(x, 0.0, l + 1.0, c, nr, 2.0 * l + 1.0, 2.0 * c); };
        s.polynomial = [=](double x) { return laguerre(nr, 2.0 * l + 1.0, 2.0 * c * x); };
        s.mapped_domain = Interval::half_line(0.0);
        s.residual_window = Interval::open(0.02 / Z, (2.0 * n * n + 10.0 * n) / Z);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"Z", 1.0}, {"a0", 1.0}, {"l", 0.0}}, 0},
                {{{"Z", 2.0}, {"a0", 1.0}, {"l", 1.0}}, 1},
                {{{"Z", 3.5}, {"a0", 0.5}, {"l", 2.0}}, 3}};
    }
};

class RelSchrodinger final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::RelSchrodinger; }
    std::string_view name() const override { return "rel_schrodinger"; }
    std::string_view summary() const override { return "spinless relativistic Coulomb problem (Klein-Gordon)"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"mu", constants::fine_structure, false, Range::Positive, "Z e^2/(hbar c); alias Z sets mu = Z alpha"},
                {"beta", 1.0, false, Range::Positive, "inverse Compton length m c / hbar"},
                {"l", 0.0, true, Range::NonNegative, "orbital quantum number"}};
    }
    std::string units() const override { return "m c^2"; }
    std::string level_label() const override { return "n_r"; }
    int level_count(const Params&) const override { return -1; }
    QuantumNumbers quantum_numbers(const Params& p, int nr) const override {
        const int l = get_int(p, "l");
        return {{"n_r", nr}, {"l", l}, {"n", nr + l + 1}};
    }
    static double nu(const Params& p) {
        const double l = get(p, "l"), mu = get(p, "mu");
        return -0.5 + std::sqrt(std::pow(l + 0.5, 2) - mu * mu);
    }
    double energy(const Params& p, int nr) const override { return klein_gordon_energy(nr, get_int(p, "l"), get(p, "mu")); }
    NuEquation equation(const Params& p, double e) const override {
        const double l = get(p, "l"), mu = get(p, "mu");
        NuEquation eq{LowPoly(0.0, 1.0), LowPoly(mu * mu - l * (l + 1.0), 2.0 * mu * e, e * e - 1.0), LowPoly(0.0),
                      Interval::half_line(0.0)};
        // for l = 0 both x^(nu+1) and x^(-nu) vanish at the origin; only the first keeps u' square integrable
        eq.endpoint_rules = {EndpointRule::FiniteKineticEnergy, EndpointRule::Auto};
        return eq;
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        if (std::abs(e) >= 1.0) return std::nullopt;
        const double mu = get(p, "mu"), v = nu(p), a = std::sqrt(1.0 - e * e);
        return TableRow{2.0 * mu * e - (2.0 * v + 1.0) * a,
                        LowPoly(v + 1.0, -a),
                        LowPoly(2.0 * (v + 1.0), -2.0 * a),
                        2.0 * (mu * e - (v + 1.0) * a),
                        epp(LowPoly(0.0, -a), {{0.0, v + 1.0}}),
                        epp(LowPoly(0.0, -2.0 * a), {{0.0, 2.0 * v + 1.0}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        return scaled_half_line(1.0 / get(p, "beta"), "x = beta r");
    }
    BoundState state(const Params& p, int nr) const override {
        BoundState s = base_state(*this, p, nr);
        const double mu = get(p, "mu"), beta = get(p, "beta"), v = nu(p);
        const double e = s.energy;
        const double a = mu * e / (nr + v + 1.0);
        // R = 2 (a beta)^(3/2) sqrt(n!/((nu+n+1) Gamma(2nu+n+2))) xi^nu e^(-xi/2) L_n^(2nu+1)(xi), xi = 2 a beta r
        const double k = 2.0 * a * beta;
        const double log_c = std::numbers::ln2 + 1.5 * std::log(a * beta) +
                             0.5 * (log_factorial(nr) - std::log(v + nr + 1.0) - log_gamma(2.0 * v + nr + 2.0)) +
                             v * std::log(k);
        s.normalization = std::exp(log_c);
        s.components = {[=](double r) { return laguerre_radial(r, log_c, v, 0.5 * k, nr, 2.0 * v + 1.0, k); }};
        s.weight = [](double r) { return r * r; };
        s.weight_formula = "r^2";
        s.domain = Interval::half_line(0.0);
        const double scale = (nr + v + 1.0) / k;
        s.breakpoints = {scale, 4.0 * scale};
        s.u_mapped = [=](double x) { return laguerre_radial(x, 0.0, v + 1.0, a, nr, 2.0 * v + 1.0, 2.0 * a); };
        s.polynomial = [=](double x) { return laguerre(nr, 2.0 * v + 1.0, 2.0 * a * x); };
        s.mapped_domain = Interval::half_line(0.0);
        s.residual_window = Interval::open(0.02 / (2.0 * a), (4.0 * nr + 2.0 * v + 20.0) / (2.0 * a));
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"mu", 0.3}, {"beta", 1.0}, {"l", 0.0}}, 0},
                {{{"mu", 0.05}, {"beta", 2.0}, {"l", 1.0}}, 2},
                {{{"mu", 1.2}, {"beta", 0.5}, {"l", 2.0}}, 1}};
    }

  protected:
    void check(const Params& p) const override {
        if (!(get(p, "mu") < get(p, "l") + 0.5)) fail(ErrorCode::SupercriticalCharge, "mu must be below l + 1/2");
    }
    void apply_aliases(Params& p) const override { alias_z_to_mu(p); }
};

class DiracCoulomb final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::DiracCoulomb; }
    std::string_view name() const override { return "dirac_coulomb"; }
    std::string_view summary() const override { return "Dirac electron in a Coulomb field, radial pair (F, G)"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"mu", constants::fine_structure, false, Range::Positive, "Z e^2/(hbar c); alias Z sets mu = Z alpha"},
                {"beta", 1.0, false, Range::Positive, "inverse Compton length m c / hbar"},
                {"kappa", -1.0, true, Range::Any, "Dirac quantum number +-(j + 1/2), nonzero"}};
    }
    std::string units() const override { return "m c^2"; }
    std::string level_label() const override { return "n_r"; }
    int first_level(const Params& p) const override { return get_int(p, "kappa") > 0 ? 1 : 0; }
    int level_count(const Params&) const override { return -1; }
    QuantumNumbers quantum_numbers(const Params& p, int nr) const override {
        const int kappa = get_int(p, "kappa");
        return {{"n_r", nr}, {"kappa", kappa}, {"two_j", 2 * std::abs(kappa) - 1}, {"n", nr + std::abs(kappa)}};
    }
    double energy(const Params& p, int nr) const override { return dirac_energy(nr, get_int(p, "kappa"), get(p, "mu")); }

    /// Equation for v1.
    NuEquation equation(const Params& p, double e) const override {
        return dirac_decouple(e, get(p, "mu"), get_int(p, "kappa")).v1;
    }
    NuEquation quantization_equation(const Params& p, double e) const override {
        return dirac_decouple(e, get(p, "mu"), get_int(p, "kappa")).v2;
    }
    int nu_degree(const Params&, int nr) const override { return nr; }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        if (std::abs(e) >= 1.0) return std::nullopt;
        const double mu = get(p, "mu");
        const double v = dirac_decouple(e, mu, get_int(p, "kappa")).nu;
        const double a = std::sqrt(1.0 - e * e);
        return TableRow{2.0 * mu * e - a * (2.0 * v + 1.0),
                        LowPoly(v + 1.0, -a),
                        LowPoly(2.0 * (v + 1.0), -2.0 * a),
                        2.0 * (mu * e - (v + 1.0) * a),
                        epp(LowPoly(0.0, -a), {{0.0, v + 1.0}}),
                        epp(LowPoly(0.0, -2.0 * a), {{0.0, 2.0 * v + 1.0}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        return scaled_half_line(1.0 / get(p, "beta"), "x = beta r");
    }
    BoundState state(const Params& p, int nr) const override {
        BoundState s = base_state(*this, p, nr);
        const double beta = get(p, "beta");
        const DiracRadialPair pair = dirac_radial(nr, get_int(p, "kappa"), get(p, "mu"), beta);
        s.normalization = pair.Bn;
        s.components = {[f = pair.f, beta](double r) { return f(beta * r); },
                        [g = pair.g, beta](double r) { return g(beta * r); }};
        s.weight = [](double r) { return r * r; };
        s.weight_formula = "r^2";
        s.domain = Interval::half_line(0.0);
        const double scale = (nr + pair.nu) / (2.0 * pair.a * beta);
        s.breakpoints = {scale, 4.0 * scale};
        s.u_mapped = pair.v2;
        const double a = pair.a, v = pair.nu;
        s.polynomial = [=](double x) { return laguerre(nr, 2.0 * v - 1.0, 2.0 * a * x); };
        s.mapped_domain = Interval::half_line(0.0);
        s.residual_window = Interval::open(0.02 / (2.0 * a), (4.0 * nr + 2.0 * v + 20.0) / (2.0 * a));
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"mu", 0.3}, {"beta", 1.0}, {"kappa", -1.0}}, 1},
                {{{"mu", 0.5}, {"beta", 2.0}, {"kappa", 2.0}}, 2},
                {{{"mu", 0.1}, {"beta", 1.0}, {"kappa", -2.0}}, 3}};
    }

  protected:
    void check(const Params& p) const override {
        const int kappa = get_int(p, "kappa");
        require(kappa != 0, "kappa must be nonzero");
        if (!(get(p, "mu") < std::abs(kappa))) fail(ErrorCode::SupercriticalCharge, "mu must be below |kappa|");
    }
    void apply_aliases(Params& p) const override { alias_z_to_mu(p); }
};

class Kratzer final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::Kratzer; }
    std::string_view name() const override { return "kratzer"; }
    std::string_view summary() const override { return "Kratzer molecular potential U = -2D(a/r - a^2/(2r^2))"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"D", 1.0, false, Range::Positive, "well depth"},
                {"a", 1.0, false, Range::Positive, "equilibrium distance"},
                {"h2m", 1.0, false, Range::Positive, "hbar^2/2m"},
                {"l", 0.0, true, Range::NonNegative, "orbital quantum number"}};
    }
    std::string units() const override { return "energy (units of D)"; }
    int level_count(const Params&) const override { return -1; }
    QuantumNumbers quantum_numbers(const Params& p, int n) const override { return {{"n", n}, {"l", get_int(p, "l")}}; }

    static double gamma2(const Params& p) { return std::pow(get(p, "a"), 2) * get(p, "D") / get(p, "h2m"); }
    static double nu(const Params& p) { return 0.5 + std::sqrt(gamma2(p) + std::pow(get(p, "l") + 0.5, 2)); }
    double energy(const Params& p, int n) const override {
        const double a = get(p, "a"), D = get(p, "D"), h2m = get(p, "h2m");
        return -(a * a * D * D / h2m) / std::pow(nu(p) + n, 2);
    }
    NuEquation equation(const Params& p, double e) const override {
        const double g2 = gamma2(p), l = get(p, "l");
        const double b2 = -e * std::pow(get(p, "a"), 2) / get(p, "h2m");
        return {LowPoly(0.0, 1.0), LowPoly(-g2 - l * (l + 1.0), 2.0 * g2, -b2), LowPoly(0.0), Interval::half_line(0.0)};
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        if (e >= 0.0) return std::nullopt;
        const double g2 = gamma2(p), v = nu(p);
        const double b = std::sqrt(-e * std::pow(get(p, "a"), 2) / get(p, "h2m"));
        return TableRow{2.0 * g2 - b * (2.0 * v - 1.0),
                        LowPoly(v, -b),
                        LowPoly(2.0 * v, -2.0 * b),
                        2.0 * (g2 - v * b),
                        epp(LowPoly(0.0, -b), {{0.0, v}}),
                        epp(LowPoly(0.0, -2.0 * b), {{0.0, 2.0 * v - 1.0}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override { return scaled_half_line(get(p, "a"), "x = r/a"); }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const double a = get(p, "a"), v = nu(p);
        const double b = gamma2(p) / (v + n);
        // C^2 = (2 beta)^(2 nu + 1) n! / (a (2 nu + 2 n) Gamma(2 nu + n))
        const double log_c = 0.5 * ((2.0 * v + 1.0) * std::log(2.0 * b) + log_factorial(n) - std::log(a) -
                                    std::log(2.0 * v + 2.0 * n) - log_gamma(2.0 * v + n));
        s.normalization = std::exp(log_c);
        s.components = {[=](double r) { return laguerre_radial(r / a, log_c, v, b, n, 2.0 * v - 1.0, 2.0 * b); }};
        s.domain = Interval::half_line(0.0);
        s.breakpoints = {a * (v + n) / b, 4.0 * a * (v + n) / b};
        s.u_mapped = [=](double x) { return laguerre_radial(x, 0.0, v, b, n, 2.0 * v - 1.0, 2.0 * b); };
        s.polynomial = [=](double x) { return laguerre(n, 2.0 * v - 1.0, 2.0 * b * x); };
        s.mapped_domain = Interval::half_line(0.0);
        s.residual_window = Interval::open(0.02 / b, (4.0 * n + 2.0 * v + 20.0) / (2.0 * b));
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"D", 1.0}, {"a", 1.0}, {"h2m", 1.0}, {"l", 0.0}}, 0},
                {{{"D", 2.0}, {"a", 1.0}, {"h2m", 1.0}, {"l", 1.0}}, 1},
                {{{"D", 5.0}, {"a", 1.5}, {"h2m", 0.5}, {"l", 3.0}}, 4}};
    }
};

} // namespace

std::unique_ptr<PotentialModel> make_coulomb() { return std::make_unique<Coulomb>(); }
std::unique_ptr<PotentialModel> make_rel_schrodinger() { return std::make_unique<RelSchrodinger>(); }
std::unique_ptr<PotentialModel> make_dirac_coulomb() { return std::make_unique<DiracCoulomb>(); }
std::unique_ptr<PotentialModel> make_kratzer() { return std::make_unique<Kratzer>(); }

} // namespace nuspectra::detail
