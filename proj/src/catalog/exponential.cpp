#include <cmath>

#include "common.hpp"
#include "nuspectra/molecular.hpp"

namespace nuspectra::detail {

namespace {

/// Modified Hulthen form in xi = exp(-r/a):
/// sigma = xi(1-xi), tau~ = 1-xi, sigma~ = -alpha^2 + (2 alpha^2 + b1) xi - (alpha^2 + b2) xi^2.
NuEquation mh_equation(double alpha_sq, double beta1_sq, double beta2_sq) {
    return {LowPoly(0.0, 1.0, -1.0), LowPoly(-alpha_sq, 2.0 * alpha_sq + beta1_sq, -(alpha_sq + beta2_sq)),
            LowPoly(1.0, -1.0), Interval::open(0.0, 1.0)};
}

TableRow mh_row(double alpha, double kappa, double beta1_sq) {
    return TableRow{beta1_sq - 2.0 * alpha * kappa,
                    LowPoly(alpha, -(alpha + kappa + 0.5)),
                    LowPoly(2.0 * alpha + 1.0, -2.0 * (alpha + kappa + 1.0)),
                    beta1_sq - (2.0 * alpha + 1.0) * (kappa + 0.5),
                    epp(LowPoly(0.0), {{0.0, alpha}, {1.0, kappa + 0.5}}),
                    epp(LowPoly(0.0), {{0.0, 2.0 * alpha}, {1.0, 2.0 * kappa}})};
}

CoordinateMap exp_map(double a) {
    CoordinateMap m;
    m.forward = [a](double r) { return std::exp(-r / a); };
    m.inverse = [a](double xi) { return -a * std::log(xi); };
    m.jacobian = [a](double r) { return -std::exp(-r / a) / a; };
    m.physical = Interval::half_line(0.0);
    m.mapped = Interval::open(0.0, 1.0);
    m.formula = "xi = exp(-r/a)";
    return m;
}

/// R = C xi^alpha (1-xi)^(kappa+1/2) 2F1(-n, 2 alpha + 2 kappa + n + 1; 2 alpha + 1; xi), xi = exp(-r/a).
void fill_mh_state(BoundState& s, double alpha, double kappa, double a, int n) {
    const double log_c =
        0.5 * (log_gamma(2.0 * alpha + n + 1.0) + log_gamma(2.0 * alpha + 2.0 * kappa + n + 1.0) +
               std::log(2.0 * alpha + 2.0 * kappa + 2.0 * n + 1.0) - std::log(a * 2.0 * alpha) -
               2.0 * log_gamma(2.0 * alpha) - log_gamma(2.0 * kappa + n + 1.0) - std::log(2.0 * kappa + 2.0 * n + 1.0) -
               log_factorial(n));
    const double bb = 2.0 * alpha + 2.0 * kappa + n + 1.0, cc = 2.0 * alpha + 1.0;
    s.normalization = std::exp(log_c);
    s.components = {[=](double r) {
        if (r <= 0.0) return 0.0;
        const double t = r / a;
        const double env = std::exp(log_c - alpha * t + (kappa + 0.5) * std::log(-std::expm1(-t)));
        return damp(env, hyp2f1_terminating(n, bb, cc, std::exp(-t)));
    }};
    s.domain = Interval::half_line(0.0);
    s.breakpoints = {a, 4.0 * a, 4.0 * a / std::max(alpha, 0.25)};
    s.u_mapped = [=](double xi) {
        return std::pow(xi, alpha) * std::pow(1.0 - xi, kappa + 0.5) * hyp2f1_terminating(n, bb, cc, xi);
    };
    s.polynomial = [=](double xi) { return hyp2f1_terminating(n, bb, cc, xi); };
    s.mapped_domain = Interval::open(0.0, 1.0);
    s.residual_window = inner_window(0.0, 1.0, 0.02);
}

int mh_count(double beta2, double b, double kappa) {
    const double top = std::sqrt(b * beta2);
    int count = 0;
    while (count + kappa + 0.5 < top) ++count;
    return count;
}

std::vector<ParamSpec> mh_specs() {
    return {{"V0", 1.0, false, Range::Positive, "well strength"},
            {"beta2", 40.0, false, Range::Positive, "beta^2 = a^2 V0 / h2m"},
            {"b", 2.0, false, Range::AboveOne, "shape parameter"},
            {"a", 1.0, false, Range::Positive, "range"}};
}

class Hulthen final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::Hulthen; }
    std::string_view name() const override { return "hulthen"; }
    std::string_view summary() const override { return "Hulthen well U = -V0 exp(-r/a)/(1 - exp(-r/a)), l = 0"; }
    std::vector<ParamSpec> param_specs() const override {
        return {{"V0", 1.0, false, Range::Positive, "well strength"},
                {"beta2", 2.0, false, Range::Positive, "beta^2 = a^2 V0 / h2m"},
                {"a", 1.0, false, Range::Positive, "range"}};
    }
    std::string units() const override { return "energy (units of V0)"; }
    int first_level(const Params&) const override { return 1; }
    int level_count(const Params& p) const override {
        const double b2 = get(p, "beta2");
        int count = 0;
        while (double(count + 1) * (count + 1) < b2) ++count;
        return count;
    }
    std::string empty_spectrum_message(const Params& p) const override {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "no bound states: beta^2 = %.17g does not exceed 1, the minimum size of potential hole",
                      get(p, "beta2"));
        return buf;
    }
    static double alpha_n(const Params& p, int n) { return (get(p, "beta2") - double(n) * n) / (2.0 * n); }
    double energy(const Params& p, int n) const override {
        const double b2 = get(p, "beta2");
        return -get(p, "V0") * std::pow((b2 - double(n) * n) / (2.0 * std::sqrt(b2) * n), 2);
    }
    NuEquation equation(const Params& p, double e) const override {
        const double b2 = get(p, "beta2");
        const double al2 = -e * b2 / get(p, "V0");
        return {LowPoly(0.0, 1.0, -1.0), multiply(LowPoly(1.0, -1.0), LowPoly(-al2, al2 + b2)), LowPoly(1.0, -1.0),
                Interval::open(0.0, 1.0)};
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        if (e >= 0.0) return std::nullopt;
        const double b2 = get(p, "beta2");
        const double al = std::sqrt(-e * b2 / get(p, "V0"));
        return TableRow{b2 - al,
                        LowPoly(al, -(al + 1.0)),
                        LowPoly(2.0 * al + 1.0, -(2.0 * al + 3.0)),
                        b2 - 2.0 * al - 1.0,
                        epp(LowPoly(0.0), {{0.0, al}, {1.0, 1.0}}),
                        epp(LowPoly(0.0), {{0.0, 2.0 * al}, {1.0, 1.0}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override { return exp_map(get(p, "a")); }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const double a = get(p, "a"), al = alpha_n(p, n);
        // C = (2 alpha)_n / n! sqrt((alpha + n)(2 alpha + n) / (2 alpha a))
        const double log_c = log_gamma(2.0 * al + n) - log_gamma(2.0 * al) - log_factorial(n) +
                             0.5 * (std::log(al + n) + std::log(2.0 * al + n) - std::log(2.0 * al * a));
        const int m = n - 1;
        const double bb = 1.0 + 2.0 * al + n, cc = 2.0 * al + 1.0;
        s.normalization = std::exp(log_c);
        s.components = {[=](double r) {
            if (r <= 0.0) return 0.0;
            const double t = r / a;
            return damp(std::exp(log_c - al * t) * -std::expm1(-t), hyp2f1_terminating(m, bb, cc, std::exp(-t)));
        }};
        s.domain = Interval::half_line(0.0);
        s.breakpoints = {a, 4.0 * a / al};
        s.u_mapped = [=](double xi) { return std::pow(xi, al) * (1.0 - xi) * hyp2f1_terminating(m, bb, cc, xi); };
        s.polynomial = [=](double xi) { return hyp2f1_terminating(m, bb, cc, xi); };
        s.mapped_domain = Interval::open(0.0, 1.0);
        s.residual_window = inner_window(0.0, 1.0, 0.02);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"V0", 1.0}, {"beta2", 2.0}, {"a", 1.0}}, 1},
                {{{"V0", 2.0}, {"beta2", 10.0}, {"a", 1.5}}, 2},
                {{{"V0", 0.5}, {"beta2", 30.0}, {"a", 0.7}}, 4}};
    }
};

class ModHulthen final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::ModHulthen; }
    std::string_view name() const override { return "mod_hulthen"; }
    std::string_view summary() const override {
        return "modified Hulthen well U = -V0 e^(-r/a)(1 - b e^(-r/a))/(1 - e^(-r/a))^2, l = 0";
    }
    std::vector<ParamSpec> param_specs() const override { return mh_specs(); }
    std::string units() const override { return "energy (units of V0)"; }
    static double kappa(const Params& p) { return std::sqrt(0.25 + (get(p, "b") - 1.0) * get(p, "beta2")); }
    static double alpha_n(const Params& p, int n) {
        const double N = n + kappa(p) + 0.5;
        return (get(p, "b") * get(p, "beta2") - N * N) / (2.0 * N);
    }
    int level_count(const Params& p) const override { return mh_count(get(p, "beta2"), get(p, "b"), kappa(p)); }
    double energy(const Params& p, int n) const override {
        return -get(p, "V0") * alpha_n(p, n) * alpha_n(p, n) / get(p, "beta2");
    }
    NuEquation equation(const Params& p, double e) const override {
        const double b2 = get(p, "beta2");
        return mh_equation(-e * b2 / get(p, "V0"), b2, get(p, "b") * b2);
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        if (e >= 0.0) return std::nullopt;
        const double b2 = get(p, "beta2");
        return mh_row(std::sqrt(-e * b2 / get(p, "V0")), kappa(p), b2);
    }
    CoordinateMap coordinate_map(const Params& p) const override { return exp_map(get(p, "a")); }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        fill_mh_state(s, alpha_n(p, n), kappa(p), get(p, "a"), n);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"V0", 1.0}, {"beta2", 40.0}, {"b", 2.0}, {"a", 1.0}}, 0},
                {{{"V0", 1.0}, {"beta2", 40.0}, {"b", 2.0}, {"a", 1.0}}, 2},
                {{{"V0", 3.0}, {"beta2", 120.0}, {"b", 4.5}, {"a", 0.6}}, 1}};
    }
};

class ModHulthenRotation final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::ModHulthenRotation; }
    std::string_view name() const override { return "mod_hulthen_rotation"; }
    std::string_view summary() const override {
        return "modified Hulthen well plus centrifugal term expanded about the minimum";
    }
    std::vector<ParamSpec> param_specs() const override {
        auto s = mh_specs();
        s.push_back({"l", 1.0, true, Range::NonNegative, "rotational quantum number"});
        return s;
    }
    std::string units() const override { return "energy (units of V0)"; }
    std::string level_label() const override { return "v"; }
    QuantumNumbers quantum_numbers(const Params& p, int v) const override { return {{"v", v}, {"l", get_int(p, "l")}}; }

    static ModHulthenRotated rotated(const Params& p, double alpha_sq) {
        return mod_hulthen_rotated(alpha_sq, get(p, "beta2"), get(p, "b"), get_int(p, "l"));
    }
    static double alpha1(const Params& p, int v) {
        const ModHulthenRotated r = rotated(p, 0.0);
        const double N = v + r.kappa1 + 0.5;
        return (r.beta2_sq - N * N) / (2.0 * N);
    }
    int level_count(const Params& p) const override {
        const ModHulthenRotated r = rotated(p, 0.0);
        return mh_count(r.beta2_sq, 1.0, r.kappa1);
    }
    double energy(const Params& p, int v) const override {
        return mod_hulthen_rotation_terms(get(p, "V0"), get(p, "beta2"), get(p, "b"), get(p, "a"), get_int(p, "l"), v)
            .total;
    }
    NuEquation equation(const Params& p, double e) const override {
        const ModHulthenRotated r = rotated(p, -e * get(p, "beta2") / get(p, "V0"));
        return mh_equation(r.alpha1_sq, r.beta1_sq, r.beta2_sq);
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const ModHulthenRotated r = rotated(p, -e * get(p, "beta2") / get(p, "V0"));
        if (r.alpha1_sq <= 0.0) return std::nullopt;
        return mh_row(std::sqrt(r.alpha1_sq), r.kappa1, r.beta1_sq);
    }
    CoordinateMap coordinate_map(const Params& p) const override { return exp_map(get(p, "a")); }
    BoundState state(const Params& p, int v) const override {
        BoundState s = base_state(*this, p, v);
        fill_mh_state(s, alpha1(p, v), rotated(p, 0.0).kappa1, get(p, "a"), v);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"V0", 1.0}, {"beta2", 40.0}, {"b", 2.0}, {"a", 1.0}, {"l", 1.0}}, 0},
                {{{"V0", 1.0}, {"beta2", 40.0}, {"b", 2.0}, {"a", 1.0}, {"l", 2.0}}, 1},
                {{{"V0", 3.0}, {"beta2", 120.0}, {"b", 4.5}, {"a", 0.6}, {"l", 4.0}}, 1}};
    }

  protected:
    void check(const Params& p) const override {
        const ModHulthenRotated r = rotated(p, 0.0);
        require(r.beta1_sq > 0.0 && 0.25 + r.beta2_sq - r.beta1_sq > 0.0,
                "rotation term too large for the expansion about the minimum");
    }
};

std::vector<ParamSpec> gm_specs() {
    return {{"D", 10.0, false, Range::Positive, "dissociation limit U(infinity)"},
            {"a", 1.0, false, Range::Positive, "inverse range"},
            {"r0", std::log(3.0), false, Range::Positive, "position of the minimum"},
            {"h2m", 1.0, false, Range::Positive, "hbar^2/2m"}};
}

struct GmDerived {
    double kappa, gamma, delta, scale; ///< scale = a^2 h2m
};
GmDerived gm_derived(const Params& p) {
    const double a = get(p, "a"), h2m = get(p, "h2m");
    const double kappa = get(p, "D") / (a * a * h2m);
    const double gamma = std::expm1(a * get(p, "r0"));
    return {kappa, gamma, 0.5 + std::sqrt(0.25 + kappa * gamma * gamma), a * a * h2m};
}
double gm_alpha(const GmDerived& d, int n) {
    return 0.5 * (d.kappa * d.gamma * (d.gamma + 2.0) / (n + d.delta) - n - d.delta);
}
int gm_count(const GmDerived& d) {
    int count = 0;
    while (gm_alpha(d, count) > 0.0) ++count;
    return count;
}

class GeneralizedMorse final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::GeneralizedMorse; }
    std::string_view name() const override { return "generalized_morse"; }
    std::string_view summary() const override {
        return "generalized Morse well U = D (1 - (e^(a r0) - 1)/(e^(a r) - 1))^2";
    }
    std::vector<ParamSpec> param_specs() const override { return gm_specs(); }
    std::string units() const override { return "energy (units of D)"; }
    int level_count(const Params& p) const override { return gm_count(gm_derived(p)); }
    double energy(const Params& p, int n) const override {
        const GmDerived d = gm_derived(p);
        return get(p, "D") - d.scale * std::pow(gm_alpha(d, n), 2);
    }
    NuEquation equation(const Params& p, double e) const override {
        const GmDerived d = gm_derived(p);
        const double eps = e / d.scale;
        return {LowPoly(0.0, 1.0, 1.0), LowPoly(eps - d.kappa, 2.0 * d.kappa * d.gamma, -d.kappa * d.gamma * d.gamma),
                LowPoly(1.0, 2.0), Interval::half_line(0.0)};
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const GmDerived d = gm_derived(p);
        const double eps = e / d.scale;
        if (eps >= d.kappa) return std::nullopt;
        const double al = std::sqrt(d.kappa - eps);
        const double be = std::sqrt(d.kappa * std::pow(d.gamma + 1.0, 2) - eps);
        return TableRow{2.0 * (al * al - al * be + d.kappa * d.gamma),
                        LowPoly(al, al - be),
                        LowPoly(2.0 * al + 1.0, 2.0 * (al - be + 1.0)),
                        al - be + 2.0 * al * al - 2.0 * al * be + 2.0 * d.kappa * d.gamma,
                        epp(LowPoly(0.0), {{0.0, al}, {-1.0, -be}}),
                        epp(LowPoly(0.0), {{0.0, 2.0 * al}, {-1.0, -2.0 * be}})};
    }
    CoordinateMap coordinate_map(const Params& p) const override {
        const double a = get(p, "a");
        CoordinateMap m;
        m.forward = [a](double r) { return 1.0 / std::expm1(a * r); };
        m.inverse = [a](double eta) { return std::log1p(1.0 / eta) / a; };
        m.jacobian = [a](double r) {
            const double e = std::expm1(a * r);
            return -a * (e + 1.0) / (e * e);
        };
        m.physical = Interval::half_line(0.0);
        m.mapped = Interval::half_line(0.0);
        m.formula = "eta = 1/(exp(a r) - 1)";
        return m;
    }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const GmDerived d = gm_derived(p);
        const double a = get(p, "a"), al = gm_alpha(d, n), de = d.delta;
        const double log_c =
            0.5 * (std::log(a) + std::log(al + n + de) + log_gamma(2.0 * al + n + 1.0) + log_gamma(2.0 * al + n + 2.0 * de) -
                   log_factorial(n) - std::log(n + de) - log_gamma(2.0 * al) - log_gamma(2.0 * al + 1.0) -
                   log_gamma(n + 2.0 * de));
        const double bb = 2.0 * al + 2.0 * de + n, cc = 2.0 * al + 1.0;
        auto radial = [=](double r, double lc) {
            if (r <= 0.0) return 0.0;
            const double t = a * r;
            return damp(std::exp(lc - al * t + de * std::log(-std::expm1(-t))), hyp2f1_terminating(n, bb, cc, std::exp(-t)));
        };
        s.normalization = std::exp(log_c);
        s.components = {[=](double r) { return radial(r, log_c); }};
        s.domain = Interval::half_line(0.0);
        s.breakpoints = {get(p, "r0"), 4.0 / (a * std::max(al, 0.25))};
        s.u_mapped = [=](double eta) { return eta <= 0.0 ? 0.0 : radial(std::log1p(1.0 / eta) / a, 0.0); };
        s.polynomial = [=](double eta) { return hyp2f1_terminating(n, bb, cc, eta / (1.0 + eta)); };
        s.mapped_domain = Interval::half_line(0.0);
        s.residual_window = Interval::open(0.01, 20.0);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"D", 10.0}, {"a", 1.0}, {"r0", std::log(3.0)}, {"h2m", 1.0}}, 0},
                {{{"D", 10.0}, {"a", 1.0}, {"r0", std::log(3.0)}, {"h2m", 1.0}}, 2},
                {{{"D", 30.0}, {"a", 1.3}, {"r0", 1.2}, {"h2m", 0.5}}, 3}};
    }
};

/// The generalized Morse spectrum obtained from the equivalent modified Hulthen well.
class GeneralizedMorseViaHulthen final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::GeneralizedMorseViaHulthen; }
    std::string_view name() const override { return "generalized_morse_via_hulthen"; }
    std::string_view summary() const override {
        return "generalized Morse well solved as a shifted modified Hulthen well";
    }
    std::vector<ParamSpec> param_specs() const override { return gm_specs(); }
    std::string units() const override { return "energy (units of D)"; }

    struct Mapped {
        double V0, b, a, beta2, kappa;
    };
    static Mapped mapped(const Params& p) {
        const GmDerived d = gm_derived(p);
        const ModHulthenParams m = generalized_morse_params(get(p, "D"), get(p, "a"), get(p, "r0"));
        const double beta2 = 2.0 * d.kappa * d.gamma;
        return {m.V0, m.b, m.a, beta2, std::sqrt(0.25 + (m.b - 1.0) * beta2)};
    }
    static double alpha_n(const Mapped& m, int n) {
        const double N = n + m.kappa + 0.5;
        return (m.b * m.beta2 - N * N) / (2.0 * N);
    }
    int level_count(const Params& p) const override {
        const Mapped m = mapped(p);
        return mh_count(m.beta2, m.b, m.kappa);
    }
    double energy(const Params& p, int n) const override {
        const Mapped m = mapped(p);
        return get(p, "D") - m.V0 * std::pow(alpha_n(m, n), 2) / m.beta2;
    }
    NuEquation equation(const Params& p, double e) const override {
        const Mapped m = mapped(p);
        return mh_equation(-(e - get(p, "D")) * m.beta2 / m.V0, m.beta2, m.b * m.beta2);
    }
    std::optional<TableRow> table_row(const Params& p, double e) const override {
        const Mapped m = mapped(p);
        const double al2 = -(e - get(p, "D")) * m.beta2 / m.V0;
        if (al2 <= 0.0) return std::nullopt;
        return mh_row(std::sqrt(al2), m.kappa, m.beta2);
    }
    CoordinateMap coordinate_map(const Params& p) const override { return exp_map(mapped(p).a); }
    BoundState state(const Params& p, int n) const override {
        BoundState s = base_state(*this, p, n);
        const Mapped m = mapped(p);
        fill_mh_state(s, alpha_n(m, n), m.kappa, m.a, n);
        return s;
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return GeneralizedMorse().regression_instances();
    }
};

} // namespace

std::unique_ptr<PotentialModel> make_hulthen() { return std::make_unique<Hulthen>(); }
std::unique_ptr<PotentialModel> make_mod_hulthen() { return std::make_unique<ModHulthen>(); }
std::unique_ptr<PotentialModel> make_mod_hulthen_rotation() { return std::make_unique<ModHulthenRotation>(); }
std::unique_ptr<PotentialModel> make_generalized_morse() { return std::make_unique<GeneralizedMorse>(); }
std::unique_ptr<PotentialModel> make_generalized_morse_via_hulthen() {
    return std::make_unique<GeneralizedMorseViaHulthen>();
}

} // namespace nuspectra::detail
