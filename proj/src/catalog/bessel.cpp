#include "common.hpp"
#include "nuspectra/bessel.hpp"

namespace nuspectra::detail {

namespace {

/// Bessel's equation has no discrete spectrum; it is in the catalog for its
/// complex reduction, see bessel_reduction_fixture.
class Bessel final : public PotentialModel {
  public:
    PotentialId id() const override { return PotentialId::Bessel; }
    std::string_view name() const override { return "bessel"; }
    std::string_view summary() const override {
        return "Bessel equation z^2 u'' + z u' + (z^2 - nu^2) u = 0, reduced by u = z^nu e^(iz) y";
    }
    std::vector<ParamSpec> param_specs() const override {
        return {{"nu", 0.5, false, Range::NonNegative, "order"}};
    }
    std::string units() const override { return "none"; }
    int level_count(const Params&) const override { return 0; }
    std::string empty_spectrum_message(const Params&) const override {
        return "the Bessel equation has no discrete spectrum; its reduction uses a complex k";
    }
    double energy(const Params&, int) const override {
        fail(ErrorCode::NoBoundStates, "the Bessel equation has no discrete spectrum");
    }
    NuEquation equation(const Params& p, double) const override {
        return bessel_reduction_fixture(get(p, "nu")).equation;
    }
    std::optional<TableRow> table_row(const Params&, double) const override { return std::nullopt; }
    CoordinateMap coordinate_map(const Params&) const override { return identity_map(Interval::half_line(0.0)); }
    BoundState state(const Params& p, int) const override {
        fail(ErrorCode::NoBoundStates, empty_spectrum_message(p));
    }
    std::vector<RegressionInstance> regression_instances() const override {
        return {{{{"nu", 0.5}}, 0}, {{{"nu", 1.0}}, 0}, {{{"nu", 2.5}}, 0}};
    }
};

} // namespace

std::unique_ptr<PotentialModel> make_bessel() { return std::make_unique<Bessel>(); }

} // namespace nuspectra::detail
