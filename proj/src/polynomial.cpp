#include "nuspectra/polynomial.hpp"

#include <algorithm>

#include "nuspectra/errors.hpp"

namespace nuspectra {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidEquation: return "InvalidEquation";
    case ErrorCode::NoRealK: return "NoRealK";
    case ErrorCode::DegenerateK: return "DegenerateK";
    case ErrorCode::NotPerfectSquare: return "NotPerfectSquare";
    case ErrorCode::NoPhysicalBranch: return "NoPhysicalBranch";
    case ErrorCode::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::UnsupportedForm: return "UnsupportedForm";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::PoleAtC: return "PoleAtC";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NoBoundStates: return "NoBoundStates";
    case ErrorCode::LevelNotBound: return "LevelNotBound";
    case ErrorCode::SupercriticalCharge: return "SupercriticalCharge";
    case ErrorCode::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::Unknown: break;
    }
    return "Unknown";
}

LowPoly multiply(const LowPoly& a, const LowPoly& b) {
    std::array<double, 5> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i + j] += a.c[i] * b.c[j];
    if (r[3] != 0.0 || r[4] != 0.0) fail(ErrorCode::UnsupportedForm, "product exceeds degree 2");
    return {r[0], r[1], r[2]};
}

std::vector<double> real_roots(const LowPoly& p) {
    const double a = p.c[2], b = p.c[1], c = p.c[0];
    if (a == 0.0) {
        if (b == 0.0) return {};
        return {-c / b};
    }
    double d = b * b - 4.0 * a * c;
    // a tiny negative discriminant from rounding is a double root
    if (d < 0.0 && -d <= 1e-14 * (b * b + std::abs(4.0 * a * c))) d = 0.0;
    if (d < 0.0) return {};
    // cancellation-free form
    const double q = -0.5 * (b + std::copysign(std::sqrt(d), b));
    std::vector<double> r;
    if (q == 0.0) {
        r = {0.0, 0.0};
    } else {
        r = {q / a, c / q};
    }
    std::sort(r.begin(), r.end());
    return r;
}

double Polynomial::operator()(double x) const {
    double s = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
    return s;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial{};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
    return Polynomial(std::move(d));
}

double Polynomial::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return Polynomial{};
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

Polynomial operator*(double s, const Polynomial& a) {
    std::vector<double> r = a.c_;
    for (double& v : r) v *= s;
    return Polynomial(std::move(r));
}

std::pair<Polynomial, Polynomial> Polynomial::divide(const Polynomial& a, const Polynomial& b) {
    if (b.c_.empty()) fail(ErrorCode::DomainError, "polynomial division by zero");
    std::vector<double> rem = a.c_;
    const int db = b.degree();
    const int dq = a.degree() - db;
    if (dq < 0) return {Polynomial{}, a};
    std::vector<double> q(static_cast<std::size_t>(dq) + 1, 0.0);
    for (int k = dq; k >= 0; --k) {
        const double t = rem[static_cast<std::size_t>(k + db)] / b.c_.back();
        q[static_cast<std::size_t>(k)] = t;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= t * b.c_[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k + db)] = 0.0;
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
}

double Interval::interior_point() const {
    if (bounded()) return 0.5 * (lower + upper);
    if (lower_finite()) return lower + 1.0;
    if (upper_finite()) return upper - 1.0;
    return 0.0;
}

} // namespace nuspectra
