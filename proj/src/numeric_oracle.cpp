#include "nuspectra/numeric_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "nuspectra/errors.hpp"

namespace nuspectra {

namespace {

// Sturm count of eigenvalues below lambda for the symmetric tridiagonal
// matrix with diagonal d and constant off-diagonal e.
int sturm_count(const std::vector<double>& d, double e2, double lambda) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = d[i] - lambda - (i == 0 ? 0.0 : e2 / q);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

// Kronrod 15 / Gauss 7 abscissae and weights (QUADPACK qk15)
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error, resabs;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& g, double a, double b, int depth, long& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = g(c);
    double resk = fc * wgk[7], resg = fc * wg[3], resabs = std::abs(fc) * wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = g(c - dx), f2 = g(c + dx);
        resk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    evals += 15;
    return {a, b, resk * h, std::abs((resk - resg) * h), resabs * std::abs(h), depth};
}

// Smooth endpoint clustering u -> 3u^2 - 2u^3 on [0, 1]; weakens algebraic
// endpoint singularities so bisection does not have to chase them.
double smooth(double u) { return u * u * (3.0 - 2.0 * u); }
double dsmooth(double u) { return 6.0 * u * (1.0 - u); }

struct Piece {
    std::function<double(double)> g; // integrand on [0, 1]
};

Piece make_piece(const std::function<double(double)>& f, double a, double b) {
    const bool fa = std::isfinite(a), fb = std::isfinite(b);
    if (fa && fb) {
        const double w = b - a;
        return {[=](double u) {
            const double t = smooth(u);
            return f(a + w * t) * w * dsmooth(u);
        }};
    }
    if (fa) {
        return {[=](double u) {
            const double t = smooth(u);
            const double om = 1.0 - t;
            const double x = a + t / om;
            if (!std::isfinite(x)) return 0.0;
            const double v = f(x) * dsmooth(u) / (om * om);
            return std::isfinite(v) ? v : 0.0;
        }};
    }
    if (fb) {
        return {[=](double u) {
            const double t = smooth(u);
            const double om = 1.0 - t;
            const double x = b - t / om;
            if (!std::isfinite(x)) return 0.0;
            const double v = f(x) * dsmooth(u) / (om * om);
            return std::isfinite(v) ? v : 0.0;
        }};
    }
    fail(ErrorCode::DomainError, "piece must have at least one finite end");
}

} // namespace

std::vector<double> fd_eigen_single(const std::function<double(double)>& U, const Grid& grid, int count) {
    if (grid.points < 3 || !(grid.upper > grid.lower)) fail(ErrorCode::DomainError, "grid needs >= 3 points");
    const int n = grid.points - 2;
    if (count < 1 || count > n) fail(ErrorCode::DomainError, "invalid eigenvalue count");
    const double h = (grid.upper - grid.lower) / (grid.points - 1);
    const double ih2 = 1.0 / (h * h);
    std::vector<double> d(static_cast<std::size_t>(n));
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        d[i] = 2.0 * ih2 + U(grid.lower + (i + 1) * h);
        dmin = std::min(dmin, d[i]);
    }
    const double e2 = ih2 * ih2;
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        double lo = dmin - 2.0 * ih2;
        double step = 1.0;
        double hi = lo + step;
        while (sturm_count(d, e2, hi) <= k) {
            step *= 2.0;
            hi = lo + step;
        }
        for (int it = 0; it < 300; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (sturm_count(d, e2, mid) > k) hi = mid;
            else lo = mid;
            if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

FdResult fd_eigen(const std::function<double(double)>& U, const Grid& grid, int count, double tolerance) {
    FdResult r;
    r.coarse = fd_eigen_single(U, grid, count);
    r.fine = fd_eigen_single(U, Grid{grid.lower, grid.upper, 2 * grid.points - 1}, count);
    for (int k = 0; k < count; ++k) {
        r.eigenvalues.push_back((4.0 * r.fine[k] - r.coarse[k]) / 3.0);
        r.convergence_estimate = std::max(r.convergence_estimate, std::abs(r.fine[k] - r.coarse[k]));
    }
    if (r.convergence_estimate > tolerance) fail(ErrorCode::NotConverged, "grid refinement changed eigenvalues beyond tolerance");
    return r;
}

double fd_self_consistent(const std::function<double(double, double)>& U, const std::function<double(double)>& target,
                          const Grid& grid, int index, double e_lo, double e_hi) {
    auto g = [&](double e) {
        const auto r = fd_eigen([&](double x) { return U(x, e); }, grid, index + 1);
        return r.eigenvalues[index] - target(e);
    };
    double glo = g(e_lo), ghi = g(e_hi);
    if (glo * ghi > 0.0) fail(ErrorCode::NoSolution, "self-consistency bracket has no sign change");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (e_lo + e_hi);
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
            e_lo = mid;
            glo = gm;
        } else {
            e_hi = mid;
        }
        if (e_hi - e_lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (e_lo + e_hi);
}

QuadResult quadrature(const std::function<double(double)>& f, const Interval& domain, const QuadOptions& opt) {
    if (!(domain.upper > domain.lower)) fail(ErrorCode::DomainError, "empty integration domain");
    std::vector<double> cuts{domain.lower};
    std::vector<double> bp = opt.breakpoints;
    std::sort(bp.begin(), bp.end());
    for (double x : bp)
        if (domain.contains_interior(x) && x > cuts.back()) cuts.push_back(x);
    if (!domain.lower_finite() && !domain.upper_finite() && cuts.size() == 1) cuts.push_back(0.0);
    cuts.push_back(domain.upper);

    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) pieces.push_back(make_piece(f, cuts[i], cuts[i + 1]));

    QuadResult res;
    std::vector<std::priority_queue<Segment>> heaps(pieces.size());
    double total = 0.0, err = 0.0, absum = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        Segment s = gk15(pieces[i].g, 0.0, 1.0, 0, res.evaluations);
        total += s.value;
        err += s.error;
        absum += s.resabs;
        heaps[i].push(s);
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 200000; ++iter) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (err <= target || err <= 50.0 * eps * absum) {
            res.value = total;
            res.error = err;
            return res;
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < heaps.size(); ++i)
            if (heaps[i].top().error > heaps[worst].top().error) worst = i;
        Segment s = heaps[worst].top();
        if (s.depth >= opt.max_depth) break;
        heaps[worst].pop();
        const double m = 0.5 * (s.a + s.b);
        Segment l = gk15(pieces[worst].g, s.a, m, s.depth + 1, res.evaluations);
        Segment r = gk15(pieces[worst].g, m, s.b, s.depth + 1, res.evaluations);
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        absum += l.resabs + r.resabs - s.resabs;
        heaps[worst].push(l);
        heaps[worst].push(r);
    }
    fail(ErrorCode::ToleranceNotMet, "quadrature error estimate above tolerance at depth limit");
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0, p1 = x;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

std::complex<double> sphere_quadrature(const std::function<std::complex<double>(double, double)>& f, double tol) {
    auto rule = [&](int n) {
        std::vector<double> x, w;
        gauss_legendre(n, x, w);
        const int m = 2 * n;
        std::complex<double> sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double theta = std::acos(x[i]);
            std::complex<double> ring = 0.0;
            for (int j = 0; j < m; ++j) ring += f(theta, 2.0 * std::numbers::pi * j / m);
            sum += w[i] * ring * (2.0 * std::numbers::pi / m);
        }
        return sum;
    };
    std::complex<double> prev = rule(8);
    for (int n = 16; n <= 1024; n *= 2) {
        const std::complex<double> cur = rule(n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    fail(ErrorCode::ToleranceNotMet, "sphere quadrature did not stabilise");
}

double normalization_check(const BoundState& s, double tol) {
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    opt.breakpoints = s.breakpoints;
    return quadrature(
               [&](double x) {
                   double v = 0.0;
                   for (const auto& c : s.components) {
                       const double ci = c(x);
                       v += ci * ci;
                   }
                   return v * s.measure(x);
               },
               s.domain, opt)
        .value;
}

double orthogonality_check(const BoundState& a, const BoundState& b, double tol) {
    if (a.components.size() != b.components.size()) fail(ErrorCode::DomainError, "component count mismatch");
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    opt.breakpoints = a.breakpoints;
    opt.breakpoints.insert(opt.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
    return quadrature(
               [&](double x) {
                   double v = 0.0;
                   for (std::size_t i = 0; i < a.components.size(); ++i) v += a.components[i](x) * b.components[i](x);
                   return v * a.measure(x);
               },
               a.domain, opt)
        .value;
}

double ode_residual(const RealFn& u, const NuEquation& eq, const Interval& window) {
    if (!window.bounded()) fail(ErrorCode::DomainError, "residual window must be bounded");
    const double span = window.upper - window.lower;
    const double h = 1e-4 * span;
    double worst = 0.0, scale = 0.0, size = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = window.lower + (i + 1) * span / 51.0;
        const double um2 = u(x - 2 * h), um1 = u(x - h), u0 = u(x), up1 = u(x + h), up2 = u(x + 2 * h);
        const double d1 = (-up2 + 8.0 * up1 - 8.0 * um1 + um2) / (12.0 * h);
        const double d2 = (-up2 + 16.0 * up1 - 30.0 * u0 + 16.0 * um1 - um2) / (12.0 * h * h);
        const double s = eq.sigma(x);
        const double t1 = s * s * d2, t2 = s * eq.tau_tilde(x) * d1, t3 = eq.sigma_tilde(x) * u0;
        worst = std::max(worst, std::abs(t1 + t2 + t3));
        scale = std::max(scale, std::abs(t1) + std::abs(t2) + std::abs(t3));
        size = std::max(size, std::abs(u0));
    }
    // every term exactly zero with u nonzero, e.g. the constant l = 0 harmonic
    if (scale == 0.0 && size > 0.0) return 0.0;
    if (scale == 0.0) fail(ErrorCode::DomainError, "function vanishes across the residual window");
    return worst / scale;
}

double ode_residual(const BoundState& s, const NuEquation& eq) { return ode_residual(s.u_mapped, eq, s.residual_window); }

int count_sign_changes(const RealFn& f, const Interval& window, int samples) {
    if (!window.bounded()) fail(ErrorCode::DomainError, "sign-change window must be bounded");
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i < samples; ++i) {
        const double v = f(window.lower + (window.upper - window.lower) * i / samples);
        if (v == 0.0) continue;
        if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
        prev = v;
    }
    return changes;
}

} // namespace nuspectra
