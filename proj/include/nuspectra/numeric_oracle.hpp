#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "nuspectra/bound_state.hpp"
#include "nuspectra/nu_engine.hpp"

namespace nuspectra {

/// Uniform grid including both Dirichlet endpoints.
struct Grid {
    double lower;
    double upper;
    int points;
};

struct FdResult {
    std::vector<double> eigenvalues; ///< Richardson combination of the two grids
    std::vector<double> coarse;
    std::vector<double> fine;
    double convergence_estimate = 0.0; ///< max |fine - coarse|
};

/// Lowest `count` eigenvalues of -u'' + U u = E u with u = 0 at both ends.
/// The grid is solved at N and 2N-1 points and combined by Richardson.
FdResult fd_eigen(const std::function<double(double)>& U, const Grid& grid, int count,
                  double tolerance = std::numeric_limits<double>::infinity());

/// Eigenvalue `index` of the tridiagonal 3-point operator on one grid.
std::vector<double> fd_eigen_single(const std::function<double(double)>& U, const Grid& grid, int count);

/// Energy e for which eigenvalue `index` of -u'' + U(x; e) u equals target(e),
/// bracketed in [e_lo, e_hi]. Used for energy-dependent radial operators.
double fd_self_consistent(const std::function<double(double, double)>& U, const std::function<double(double)>& target,
                          const Grid& grid, int index, double e_lo, double e_hi);

struct QuadOptions {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_depth = 40;
    std::vector<double> breakpoints;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
};

/// Adaptive Gauss-Kronrod 7/15 with recursive bisection. Unbounded ends are
/// mapped onto finite ones by x = l + t/(1-t) and its mirror images.
QuadResult quadrature(const std::function<double(double)>& f, const Interval& domain, const QuadOptions& opt = {});

/// Gauss-Legendre in cos(theta) times trapezoid in phi, refined until stable.
std::complex<double> sphere_quadrature(const std::function<std::complex<double>(double, double)>& f,
                                       double tol = 1e-12);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Integral of weight * sum |component|^2 over the physical domain.
double normalization_check(const BoundState& s, double tol = 1e-11);
/// Integral of weight * sum c1_i c2_i.
double orthogonality_check(const BoundState& a, const BoundState& b, double tol = 1e-11);

/// max over 50 samples of |sigma^2 u'' + sigma tau_tilde u' + sigma_tilde u| / scale,
/// scale being the largest sum of the three magnitudes over the same samples.
double ode_residual(const RealFn& u, const NuEquation& eq, const Interval& window);
double ode_residual(const BoundState& s, const NuEquation& eq);

/// Sign changes of the polynomial factor sampled densely across the window.
int count_sign_changes(const RealFn& f, const Interval& window, int samples = 4000);

} // namespace nuspectra
