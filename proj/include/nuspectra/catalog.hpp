#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nuspectra/bound_state.hpp"
#include "nuspectra/nu_engine.hpp"

namespace nuspectra {

enum class PotentialId {
    Harmonic1D,
    Bessel,
    SphericalHarmonics,
    Coulomb,
    RelSchrodinger,
    DiracCoulomb,
    Confinement3D,
    Oscillator3D,
    PoschlTeller,
    ModPoschlTeller,
    Kratzer,
    Hulthen,
    Morse,
    MorseRotation,
    ModHulthen,
    ModHulthenRotation,
    GeneralizedMorse,
    GeneralizedMorseViaHulthen
};

using Params = std::map<std::string, double>;
using QuantumNumbers = std::map<std::string, int>;

enum class Range { Any, Positive, NonNegative, AboveOne };

struct ParamSpec {
    std::string name;
    double default_value;
    bool integer;
    Range range;
    std::string description;
};

std::string_view to_string(Range r);

/// Bijection between the physical coordinate and the variable in which the
/// equation has hypergeometric type.
struct CoordinateMap {
    RealFn forward;
    RealFn inverse;
    RealFn jacobian; ///< d forward / dx
    Interval physical;
    Interval mapped;
    std::string formula;
};

/// The tabulated NU quantities at a trial energy, written down directly
/// from the closed forms rather than produced by the engine.
struct TableRow {
    double k;
    LowPoly pi;
    LowPoly tau;
    double lambda;
    ExpPowerProduct phi;
    ExpPowerProduct rho;
};

struct RegressionInstance {
    Params params;
    int level;
};

struct Level {
    QuantumNumbers quantum_numbers;
    double energy;
};

struct Spectrum {
    std::vector<Level> levels;
    std::string units;
    int level_count = -1;   ///< -1 when unbounded
    bool truncated = false; ///< requested range exceeded the level-count rule
};

class PotentialModel {
  public:
    virtual ~PotentialModel() = default;

    virtual PotentialId id() const = 0;
    virtual std::string_view name() const = 0;
    virtual std::string_view summary() const = 0;
    virtual std::vector<ParamSpec> param_specs() const = 0;
    virtual std::string units() const = 0;
    virtual std::string level_label() const { return "n"; }
    virtual int first_level(const Params&) const { return 0; }

    /// Fills defaults, rejects unknown keys and values outside the admissible range.
    Params resolve(const Params& user) const;

    /// Number of bound levels starting at first_level, -1 when infinite.
    virtual int level_count(const Params& p) const = 0;
    virtual std::string empty_spectrum_message(const Params&) const { return "parameters admit no bound states"; }
    virtual double energy(const Params& p, int level) const = 0;
    virtual QuantumNumbers quantum_numbers(const Params& p, int level) const;

    virtual NuEquation equation(const Params& p, double energy) const = 0;
    virtual std::optional<TableRow> table_row(const Params& p, double energy) const = 0;
    virtual CoordinateMap coordinate_map(const Params& p) const = 0;
    virtual BoundState state(const Params& p, int level) const = 0;
    virtual std::vector<RegressionInstance> regression_instances() const = 0;

    /// Equation, NU degree and target energy used when the spectrum is
    /// recovered from lambda(E) = lambda_n.
    virtual NuEquation quantization_equation(const Params& p, double energy) const { return equation(p, energy); }
    virtual int nu_degree(const Params& p, int level) const { return level - first_level(p); }
    virtual double quantization_target(const Params& p, int level) const { return energy(p, level); }

    /// Throws LevelNotBound when the level is outside the level-count rule.
    void require_bound(const Params& p, int level) const;

  protected:
    /// Range checks beyond positivity of the schema; throws InvalidParams.
    virtual void check(const Params& p) const;
    /// Rewrites alternative parameter names (e.g. Z for mu) before validation.
    virtual void apply_aliases(Params&) const {}
};

const std::vector<const PotentialModel*>& all_models();
const PotentialModel& model(PotentialId id);
const PotentialModel& model(std::string_view name);
std::string_view id_name(PotentialId id);

/// Closed-form spectrum for levels first..last; levels beyond the
/// level-count rule are dropped and flagged.
Spectrum spectrum(PotentialId id, const Params& params, int first, int last);
BoundState eigenstate(PotentialId id, const Params& params, int level);

/// Energy recovered from the NU condition lambda(E) = lambda_n by bisection.
double quantization_energy(const PotentialModel& m, const Params& params, int level);

/// Y_lm with the sign convention (-1)^m for m >= 0.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

/// Largest coefficient mismatch between engine output and a table row,
/// relative to the largest coefficient of the equation. Exponents and
/// factor powers are compared relative to max(1, |value|).
double table_mismatch(const NuEquation& eq, const NuBranch& b, const TableRow& row);

} // namespace nuspectra
