#pragma once

#include <array>
#include <string>
#include <vector>

#include "nuspectra/polynomial.hpp"

namespace nuspectra {

/// Admissible behaviour of phi near a finite domain endpoint, phi ~ |x - e|^p.
enum class EndpointRule {
    Auto,                ///< Vanishing where sigma is zero, Bounded otherwise
    Bounded,             ///< p >= 0
    Vanishing,           ///< p > 0
    FiniteKineticEnergy, ///< p > 1/2, the derivative stays square integrable
    Analytic             ///< p a nonnegative integer
};

/// u'' + (tau_tilde/sigma) u' + (sigma_tilde/sigma^2) u = 0 on a real domain.
struct NuEquation {
    LowPoly sigma;
    LowPoly sigma_tilde;
    LowPoly tau_tilde;
    Interval domain;
    std::array<EndpointRule, 2> endpoint_rules{EndpointRule::Auto, EndpointRule::Auto};
};

/// Throws InvalidEquation when sigma is zero, degrees are exceeded, or sigma
/// changes sign strictly inside the domain.
void validate(const NuEquation& eq);

struct PowerFactor {
    double root;
    double power;
};

/// exp(Q(x)) * prod |x - r_i|^p_i. Both phi and rho are defined up to a
/// constant factor, so absolute values are used throughout.
struct ExpPowerProduct {
    LowPoly exponent;
    std::vector<PowerFactor> factors;

    double operator()(double x) const;
    double log_abs(double x) const;
    double log_derivative(double x) const;
    /// Power attached to a root, 0 when the root does not appear.
    double power_at(double root, double tol = 1e-10) const;
};

/// Log-derivative numerator/sigma integrated by partial fractions.
ExpPowerProduct integrate_log_derivative(const LowPoly& numerator, const LowPoly& sigma);

struct NuBranch {
    double k = 0.0;
    LowPoly pi;
    LowPoly tau;
    double lambda = 0.0;
    ExpPowerProduct phi;
    ExpPowerProduct rho;
};

/// Roots of the zero-discriminant condition on q + k sigma, duplicates merged.
std::vector<double> k_candidates(const NuEquation& eq);

/// The two pi polynomials for a given k, "+" branch first.
std::array<LowPoly, 2> pi_branches(const NuEquation& eq, double k);

NuBranch make_branch(const NuEquation& eq, double k, const LowPoly& pi);

/// Every (k, pi) pair, deduplicated.
std::vector<NuBranch> all_branches(const NuEquation& eq);

/// Largest coefficient of pi^2 + (tau_tilde - sigma') pi + sigma_tilde - k sigma.
double reduction_residual(const NuEquation& eq, double k, const LowPoly& pi);

/// Filters candidates by the bound-state conditions. The result does not
/// depend on the order of the candidates.
NuBranch select_bound_state_branch(const NuEquation& eq, const std::vector<NuBranch>& candidates);
NuBranch select_bound_state_branch(const NuEquation& eq);

/// Explains why a branch was rejected, empty when it qualifies.
std::string branch_rejection(const NuEquation& eq, const NuBranch& b);

double quantized_lambda(const LowPoly& tau, const LowPoly& sigma, int n);

/// B_n / rho * d^n/dx^n (sigma^n rho) as an explicit polynomial.
Polynomial rodrigues_polynomial(const LowPoly& sigma, const ExpPowerProduct& rho, int n, double Bn);

} // namespace nuspectra
