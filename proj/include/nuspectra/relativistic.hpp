#pragma once

#include <array>
#include <vector>

#include "nuspectra/bound_state.hpp"
#include "nuspectra/nu_engine.hpp"

namespace nuspectra {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Second-order equations for v = C (x f, x g) with C chosen so that both
/// off-diagonal entries of C A C^-1 lose their 1/x part.
struct DiracDecoupling {
    double epsilon = 0.0, mu = 0.0;
    int kappa = 0;
    double nu = 0.0; ///< sqrt(kappa^2 - mu^2)
    double a = 0.0;  ///< sqrt(1 - epsilon^2), 0 outside the bound range
    NuEquation v1, v2;
    Matrix2 transform{};
    double f1 = 0.0, f2 = 0.0, g1 = 0.0, g2 = 0.0;

    /// A(x) of u' = A u with u = (x f, x g).
    Matrix2 original(double x) const;
    /// C A(x) C^-1.
    Matrix2 transformed(double x) const;
};

DiracDecoupling dirac_decouple(double epsilon, double mu, int kappa);

/// Closed-form radial pair F(r) = f(beta r), G(r) = g(beta r).
struct DiracRadialPair {
    int n_r = 0, kappa = 0;
    double mu = 0.0, beta = 1.0;
    double epsilon = 0.0, nu = 0.0, a = 0.0;
    double f1 = 0.0, f2 = 0.0, g1 = 0.0, g2 = 0.0, Bn = 0.0;
    RealFn f, g;   ///< in x = beta r
    RealFn v1, v2; ///< decoupled components in x
};

/// kappa = sign * (j + 1/2).
int dirac_kappa(double j, int sign);
double dirac_energy(int n_r, int kappa, double mu);
DiracRadialPair dirac_radial(int n_r, int kappa, double mu, double beta = 1.0);

/// Residual of f' + (1+kappa) f / x = (1 + eps + mu/x) g and
/// g' + (1-kappa) g / x = (1 - eps - mu/x) f at 50 points of the window,
/// relative to the largest term magnitude.
double dirac_system_residual(const DiracRadialPair& pair, double x_lo, double x_hi);

/// Energy in units of m c^2 of the spinless relativistic Coulomb problem.
double klein_gordon_energy(int n_r, int l, double mu);

enum class FineStructureModel { RelSchrodinger, Dirac };

struct FineStructureExpansion {
    int n = 0;
    double c0 = 0.0, c2 = 0.0, c4 = 0.0;
    double expected_c2 = 0.0, expected_c4 = 0.0;
};

/// Coefficients of 1, mu^2, mu^4 in eps(mu) by polynomial extrapolation in
/// mu^2 over the samples. `l_or_kappa` is l for the spinless model and kappa
/// for the Dirac model. Throws ExtrapolationUnstable when sub-sample
/// extrapolations disagree.
FineStructureExpansion fine_structure_expansion_check(FineStructureModel model, int n_r, int l_or_kappa,
                                                      const std::vector<double>& mu_samples);

} // namespace nuspectra
