#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nuspectra/polynomial.hpp"

namespace nuspectra {

using RealFn = std::function<double(double)>;

/// A normalised eigenstate in closed form.
///
/// `components` are evaluated in the physical coordinate and integrated
/// against `weight` (r^2 for radial R(r), sin(theta) for the polar factor of
/// Y_lm, 1 otherwise). Spinor states carry two components. The mapped fields
/// describe u(xi) = phi(xi) y(xi) in the variable of the hypergeometric-type
/// equation and are what the ODE residual and node count look at.
struct BoundState {
    std::string potential;
    std::map<std::string, int> quantum_numbers;
    double energy = 0.0;
    std::string units;
    /// Constant prefactor of the closed form that makes the state unit-norm.
    double normalization = 1.0;

    std::vector<RealFn> components;
    RealFn weight;
    std::string weight_formula = "1"; ///< `weight` written out
    Interval domain;
    std::vector<double> breakpoints;

    RealFn u_mapped;
    RealFn polynomial;
    int polynomial_degree = 0;
    Interval mapped_domain;
    Interval residual_window;

    double psi(double x) const { return components.at(0)(x); }
    double measure(double x) const { return weight ? weight(x) : 1.0; }
};

} // namespace nuspectra
