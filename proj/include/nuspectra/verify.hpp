#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nuspectra/catalog.hpp"

namespace nuspectra {

enum class VerifyScope { All, Tables, Oracle, Normalization, Expansions };

std::optional<VerifyScope> parse_scope(std::string_view text);
std::string_view to_string(VerifyScope scope);

struct Tolerances {
    double table = 1e-10;         ///< relative coefficient mismatch
    double quantization = 1e-9;   ///< relative, lambda(E) = lambda_n root vs closed form
    double oracle_scale = 1.0;    ///< multiplies every per-id FD tolerance
    double normalization = 1e-6;  ///< absolute
    double orthogonality = 1e-6;  ///< absolute
    double residual = 1e-6;       ///< relative ODE residual
    double expansion = 1e-4;      ///< relative, extrapolated series coefficients
    double integral = 1e-8;       ///< relative, closed-form integrals vs quadrature
};

/// Overrides in the form "name=value,name=value" with the field names above.
/// A bare number multiplies every tolerance. Throws InvalidParams on bad text.
Tolerances parse_tolerances(std::string_view text, Tolerances base = {});
/// Defaults, overridden by NU_SPECTRA_TOL when it is set.
Tolerances tolerances_from_env();

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    VerifyScope scope = VerifyScope::All;
    std::vector<CheckResult> checks;
    bool all_passed() const;
    std::vector<const CheckResult*> failures() const;
};

VerifyReport run_verification(VerifyScope scope, const Tolerances& tol = {});

/// Engine output against the table rows at the regression instances, the
/// quantization round trip, level-count rules and the Bessel fixture.
std::vector<CheckResult> verify_tables(const Tolerances& tol = {});
/// Closed-form levels against finite differences on the physical potential.
std::vector<CheckResult> verify_oracle(const Tolerances& tol = {});
/// Normalization, orthogonality, ODE residual and node count of the states.
std::vector<CheckResult> verify_normalization(const Tolerances& tol = {});
/// Fine-structure series, rotation expansions and the Laguerre integrals.
std::vector<CheckResult> verify_expansions(const Tolerances& tol = {});

/// One finite-difference comparison.
struct OracleCase {
    PotentialId id;
    Params params;
    std::vector<int> levels;
    double tolerance;      ///< relative unless `absolute`
    bool absolute = false;
};

struct OracleComparison {
    OracleCase spec;
    std::vector<double> closed_form;
    std::vector<double> numeric;
    double max_error = 0.0;
    bool passed = false;
};

std::vector<OracleCase> oracle_cases();
OracleComparison run_oracle_case(const OracleCase& c, double tolerance_scale = 1.0);

/// Energies of the requested levels from finite differences on the physical
/// potential. Radial problems start at the origin with a Dirichlet wall; the
/// relativistic Coulomb problems are solved self-consistently in the energy.
std::vector<double> fd_levels(PotentialId id, const Params& params, const std::vector<int>& levels);

/// Klein-Gordon radial states are orthogonal with the energy-dependent weight
/// r^2 (e_n + e_m + 2 mu/(beta r)); the result is normalised by the diagonal terms.
double klein_gordon_overlap(const Params& params, int n1, int n2);

} // namespace nuspectra
