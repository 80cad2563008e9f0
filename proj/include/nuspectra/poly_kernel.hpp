#pragma once

#include <vector>

#include "nuspectra/nu_engine.hpp"
#include "nuspectra/polynomial.hpp"

namespace nuspectra {

enum class Family { Jacobi, Laguerre, Hermite };

/// x y_n = alpha_n y_{n+1} + beta_n y_n + gamma_n y_{n-1}
struct RecurrenceCoeffs {
    double alpha;
    double beta;
    double gamma;
};

/// sigma, tau, rho and the normalising constants of a classical family in
/// the hypergeometric-type form sigma y'' + tau y' + lambda_n y = 0.
struct ClassicalForm {
    LowPoly sigma;
    LowPoly tau;
    ExpPowerProduct rho;
    Interval support;
};

ClassicalForm classical_form(Family f, double a = 0.0, double b = 0.0);
double classical_lambda(Family f, int n, double a = 0.0, double b = 0.0);
double rodrigues_constant(Family f, int n);
double leading_coefficient(Family f, int n, double a = 0.0, double b = 0.0);

/// Value at x by the three-term recurrence. Jacobi accepts negative and
/// non-integer parameters; zero denominators fall back to the 2F1 sum.
double ortho_eval(Family f, int n, double x, double a = 0.0, double b = 0.0);
/// y_0(x) ... y_n(x).
std::vector<double> ortho_eval_all(Family f, int n, double x, double a = 0.0, double b = 0.0);

RecurrenceCoeffs recurrence(Family f, int n, double a = 0.0, double b = 0.0);

/// Squared weighted L2 norm; needs a, b > -1.
double norm_squared(Family f, int n, double a = 0.0, double b = 0.0);

/// ln Gamma(x) for x > 0; DomainError otherwise.
double log_gamma(double x);
double gamma_fn(double x);
/// Euler beta B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
double beta_value(double a, double b);
double log_factorial(int n);
/// Rising factorial (a)_k.
double pochhammer(double a, int k);

/// 2F1(-n, b; c; x).
double hyp2f1_terminating(int n, double b, double c, double x);
/// 1F1(-n; c; x).
double hyp1f1_terminating(int n, double c, double x);

/// Integral over (0, inf) of exp(-x) x^(a+s) L_n^a(x) L_m^b(x).
double laguerre_product_integral(int n, int m, double s, double a, double b);
/// s = 1, m = n, b = a.
double laguerre_I1(int n, double a);
/// s = -1, b = a = delta, m <= n.
double laguerre_Im1(int m, double delta);

} // namespace nuspectra
