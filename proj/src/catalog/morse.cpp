#include <cmath>

#include "common.hpp"
#include "nuspectra/molecular.hpp"

namespace nuspectra::detail {

namespace {

/// sqrt(2 beta v! / (r0 Gamma(2 beta/alpha + v + 1))) xi^(beta/alpha) e^(-xi/2) L_v^(2 beta/alpha)(xi)
/// with log xi passed in so that the far left tail never overflows.
double morse_radial(double log_xi, double beta, double alpha, double r0, int v) {
    const double xi = std::exp(log_xi);
    if (xi > 2000.0) return 0.0;
    const double s = beta / alpha;
    const double log_c = 0.5 * (std::log(2.0 * beta) + log_factorial(v) - std::log(r0) - log_gamma(2.0 * s + v + 1.0));
    return damp(std::exp(log_c + s * log_xi - 0.5 * xi), laguerre(v, 2.0 * s, xi));
}

CoordinateMap morse_map(double r0, double alpha, double scale) {
    // xi = scale exp(-alpha (r - r0)/r0)
    CoordinateMap m;
    m.forward = [=](double r) { return scale * std::exp(-alpha * (r - r0) / r0); };
    m.inverse = [=](double xi) { return r0 * (1.0 - std::log(xi / scale) / alpha); };
    m.jacobian = [=](double r) { return -alpha / r0 * scale * std::exp(-alpha * (r - r0) / r0); };
    m.physical = Interval::half_line(0.0);
    m.mapped = Interval::half_line(0.0);
    m.formula = "xi = (2 gamma/alpha) exp(-alpha (r - r0)/r0)";
    return m;
}

int count_positive(double top) {
    int count = 0;
    while (count + 0.5 < top) ++count;
    return count;
}

std::vector<ParamSpec> morse_specs() {
    return {{"D", 156.25, false, Range::Positive, "well depth"},
            {"alpha", 2.5, false, Range::Positive, "dimensionless steepness alpha r0"},
            {"r0", 1.0, false, Range::Positive, "equilibrium distance"},
            {"h2m", 1.0, false, Range::Positive, "hbar^2/2m"}};
}

NuEquation morse_equation(double beta_sq, double alpha, double linear) {
    return {LowPoly(0.0, 1.0), LowPoly(-beta_sq / (alpha * alpha), linear, -0.25), LowPoly(1.0),
            Interval::half_line(0.0)};
}

TableRow morse_row(double beta, double alpha, double linear) {
    const double s = beta / alpha;
    const double k = linear - s;
    return TableRow{k,
                    LowPoly(s, -0.5),
                    LowPoly(1.0 + 2.0 * s, -1.0),
                    k - 0.5,
                    epp(LowPoly(0.0, -0.5), {{0.0, s}}),
                    epp(LowPoly(0.0, -1.0), {{0.0, 2.0 * s}})};
}

void fill_morse_state(BoundState& s, double beta, double alpha, double r0, double gamma_eff, int v) {
    const double log_scale = std::log(2.0 * gamma_eff / alpha);
    s.normalization = std::exp(0.5 * (std::log(2.0 * beta) + log_factorial(v) - std::log(r0) -
                                      log_gamma(2.0 * beta / alpha + v + 1.0)));
    s.components = {[=](double r) { return morse_radial(log_scale - alpha * (r - r0) / r0, beta, alpha, r0, v); }};
    // Normalised over the whole line in r; the part at r < 0 is exponentially small.
    s.domain = Interval::whole_line();
    s.breakpoints = {r0 * (1.0 - std::log(2000.0 / std::exp(log_scale)) / alpha), r0, 2.0 * r0};
    const double sv = beta / alpha;
    s.u_mapped = [=](double xi) {
        return xi <= 0.0 ? 0.0 : damp(std::exp(sv * std::log(xi) - 0.5 * xi), laguerre(v, 2.0 * sv, xi));
    };
    s.polynomial = [=](double xi) { return laguerre(v, 2.0 * sv, xi); };
    s.mapped_domain = Interval::half_line(0.0);
    s.residual_window = Interval::open(0.02, 4.0 * v + 2.0 * sv + 20.0);
}

class Morse final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::Morse; }
    std::string_view name() const override { return "morse"; }
    std::string_view summary() const override {
        return "Morse well U = D (exp(-2 alpha x) - 2 exp(-alpha x)), x = (r - r0)/r0";
    }
    std::vector<ParamSpec> param_specs() const override { return morse_specs(); }
    std::string units() const override { return "energy (units of D)"; }
    std::string level_label() const override { return "v"; }

    static double gamma(const Params& p) { return get(p, "r0") * std::sqrt(get(p, "D") / get(p, "h2m")); }
    int level_count(const Params& p) const override { return count_positive(gamma(p) / get(p, "alpha")); }
    double energy(const Params& p, int v) const override {
        const double r0 = get(p, "r0");
        return -get(p, "h2m") / (r0 * r0) * std::pow(gamma(p) - get(p, "alpha") * (v + 0.5), 2);
    }
    NuEquation equation(const Params& p, double e) const override {
        const double r0 = get(p, "r0"), alpha = get(p, "alpha");
        return morse_equation(-e * r0 * r0 / get(p, "h2m"), alpha, gamma(p) / alpha);
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        if (e >= 0.0) return std::nullopt;
        const double r0 = get(p, "r0"), alpha = get(p, "alpha");
        return morse_row(std::sqrt(-e * r0 * r0 / get(p, "h2m")), alpha, gamma(p) / alpha);
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        return morse_map(get(p, "r0"), get(p, "alpha"), 2.0 * gamma(p) / get(p, "alpha"));
    }
    BoundState state(const Params& p, int v) const override {
        BoundState s = base_state(*this, p, v);
        const double alpha = get(p, "alpha");
        fill_morse_state(s, gamma(p) - alpha * (v + 0.5), alpha, get(p, "r0"), gamma(p), v);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"D", 156.25}, {"alpha", 2.5}, {"r0", 1.0}, {"h2m", 1.0}}, 0},
                {{{"D", 156.25}, {"alpha", 2.5}, {"r0", 1.0}, {"h2m", 1.0}}, 3},
                {{{"D", 40.0}, {"alpha", 1.7}, {"r0", 2.0}, {"h2m", 0.5}}, 2}};
    }
};

class MorseRotation final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::MorseRotation; }
    std::string_view name() const override { return "morse_rotation"; }
    std::string_view summary() const override {
        return "Morse well plus centrifugal term, 1/r^2 expanded about r0 to three exponentials";
    }
    std::vector<ParamSpec> param_specs() const override {
        auto s = morse_specs();
        s.push_back({"l", 1.0, true, Range::NonNegative, "rotational quantum number"});
        return s;
    }
    std::string units() const override { return "energy (units of D)"; }
    std::string level_label() const override { return "v"; }
    QuantumNumbers quantum_numbers(const Params& p, int v) const override { return {{"v", v}, {"l", get_int(p, "l")}}; }

    struct Rotated {
        double gamma_sq, L, C0, g1sq, g2;
    };
    static Rotated rotated(const Params& p) {
        const auto c = morse_rotation_coeffs(get(p, "alpha"));
        const double g2 = std::pow(get(p, "r0"), 2) * get(p, "D") / get(p, "h2m");
        const double l = get(p, "l"), L = l * (l + 1.0);
        return {g2, L, c.C0, g2 - 0.5 * L * c.C1, std::sqrt(g2 + L * c.C2)};
    }
    int level_count(const Params& p) const override {
        const Rotated r = rotated(p);
        return count_positive(r.g1sq / r.g2 / get(p, "alpha"));
    }
    double energy(const Params& p, int v) const override {
        return morse_rotation_terms(get(p, "D"), get(p, "alpha"), get(p, "r0"), get(p, "h2m"), get_int(p, "l"), v).total;
    }
    double quantization_target(const Params& p, int v) const override {
        return morse_rotation_unexpanded(get(p, "D"), get(p, "alpha"), get(p, "r0"), get(p, "h2m"), get_int(p, "l"), v);
    }
    NuEquation equation(const Params& p, double e) const override {
        const Rotated r = rotated(p);
        const double r0 = get(p, "r0"), alpha = get(p, "alpha");
        const double b1sq = -e * r0 * r0 / get(p, "h2m") + r.L * r.C0;
        return morse_equation(b1sq, alpha, r.g1sq / (alpha * r.g2));
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const Rotated r = rotated(p);
        const double r0 = get(p, "r0"), alpha = get(p, "alpha");
        const double b1sq = -e * r0 * r0 / get(p, "h2m") + r.L * r.C0;
        if (b1sq <= 0.0) return std::nullopt;
        return morse_row(std::sqrt(b1sq), alpha, r.g1sq / (alpha * r.g2));
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        return morse_map(get(p, "r0"), get(p, "alpha"), 2.0 * rotated(p).g2 / get(p, "alpha"));
    }
    BoundState state(const Params& p, int v) const override {
        BoundState s = base_state(*this, p, v);
        const Rotated r = rotated(p);
        const double alpha = get(p, "alpha");
        const double beta1 = r.g1sq / r.g2 - alpha * (v + 0.5);
        fill_morse_state(s, beta1, alpha, get(p, "r0"), r.g2, v);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"D", 156.25}, {"alpha", 2.5}, {"r0", 1.0}, {"h2m", 1.0}, {"l", 1.0}}, 0},
                {{{"D", 156.25}, {"alpha", 2.5}, {"r0", 1.0}, {"h2m", 1.0}, {"l", 3.0}}, 2},
                {{{"D", 400.0}, {"alpha", 2.38}, {"r0", 1.0}, {"h2m", 1.0}, {"l", 5.0}}, 1}};
    }

  protected:
    void check(const Params& p) const override {
        const auto c = morse_rotation_coeffs(get(p, "alpha"));
        const double g2 = std::pow(get(p, "r0"), 2) * get(p, "D") / get(p, "h2m");
        const double l = get(p, "l"), L = l * (l + 1.0);
        require(g2 + L * c.C2 > 0.0 && g2 - 0.5 * L * c.C1 > 0.0, "rotation term too large for the exponential expansion");
    }
};

} // namespace

std::unique_ptr<PotentialModel> make_morse() { return std::make_unique<Morse>(); }
std::unique_ptr<PotentialModel> make_morse_rotation() { return std::make_unique<MorseRotation>(); }

} // namespace nuspectra::detail
