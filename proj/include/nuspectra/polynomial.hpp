#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace nuspectra {

/// Polynomial of degree at most 2, c[0] + c[1] x + c[2] x^2.
struct LowPoly {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    LowPoly() = default;
    constexpr LowPoly(double c0, double c1 = 0.0, double c2 = 0.0) : c{c0, c1, c2} {}

    double operator()(double x) const { return c[0] + x * (c[1] + x * c[2]); }
    double at0() const { return c[0]; }
    double d1(double x = 0.0) const { return c[1] + 2.0 * c[2] * x; }
    double d2() const { return 2.0 * c[2]; }

    /// Highest index with a nonzero coefficient, -1 for the zero polynomial.
    int degree() const {
        for (int i = 2; i >= 0; --i)
            if (c[i] != 0.0) return i;
        return -1;
    }
    LowPoly derivative() const { return {c[1], 2.0 * c[2], 0.0}; }
    double max_abs() const { return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])}); }
};

inline LowPoly operator+(const LowPoly& a, const LowPoly& b) { return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}; }
inline LowPoly operator-(const LowPoly& a, const LowPoly& b) { return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]}; }
inline LowPoly operator*(double s, const LowPoly& a) { return {s * a.c[0], s * a.c[1], s * a.c[2]}; }
inline LowPoly operator-(const LowPoly& a) { return -1.0 * a; }

/// Product of two polynomials whose result still has degree <= 2.
LowPoly multiply(const LowPoly& a, const LowPoly& b);

/// Real roots of a LowPoly in ascending order (repeated roots listed twice).
std::vector<double> real_roots(const LowPoly& p);

/// Dense polynomial with arbitrary degree, coefficients in ascending order.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(const LowPoly& p) : c_(p.c.begin(), p.c.end()) { trim(); } // NOLINT

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
    double operator()(double x) const;
    Polynomial derivative() const;
    double max_abs() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double s, const Polynomial& a);

    /// Quotient and remainder of a / b.
    static std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b);

  private:
    void trim();
    std::vector<double> c_;
};

/// Open or closed interval, possibly unbounded on either side.
struct Interval {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool lower_closed = false;
    bool upper_closed = false;

    static Interval open(double a, double b) { return {a, b, false, false}; }
    static Interval whole_line() { return {}; }
    static Interval half_line(double a) { return open(a, std::numeric_limits<double>::infinity()); }

    bool lower_finite() const { return std::isfinite(lower); }
    bool upper_finite() const { return std::isfinite(upper); }
    bool bounded() const { return lower_finite() && upper_finite(); }
    bool contains_interior(double x) const { return x > lower && x < upper; }
    bool contains(double x) const {
        return (x > lower || (lower_closed && x == lower)) && (x < upper || (upper_closed && x == upper));
    }
    /// Some point strictly inside, used for sign probes.
    double interior_point() const;
};

} // namespace nuspectra
