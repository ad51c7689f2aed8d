#include "varj/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "varj/error.hpp"
#include "varj/measures.hpp"

namespace varj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_nonpositive_integer(double x) {
    return x <= 1e-12 && std::fabs(x - std::round(x)) < 1e-12;
}

// --- level-set machinery for the generic Chebyshev path ------------------

// Sorted scan abscissae carrying the mass of dx.
std::vector<double> scan_points(const Density& dx, int m) {
    std::vector<double> xs;
    xs.reserve(m);
    if (const auto* dist = dynamic_cast<const Distribution*>(&dx)) {
        for (int j = 0; j < m; ++j) {
            xs.push_back(dist->quantile((j + 0.5) / m));
        }
        return xs;
    }
    if (const auto* est = dynamic_cast<const DensityEstimate*>(&dx)) {
        return est->grid();
    }
    const Interval s = dx.support();
    for (int j = 0; j < m; ++j) {
        const double t = (j + 0.5) / m;
        double x;
        if (std::isinf(s.lo) && std::isinf(s.hi)) {
            x = std::tan(M_PI * (t - 0.5));
        } else if (std::isinf(s.hi)) {
            x = s.lo + t / (1.0 - t);  // same substitution as the quadrature map
        } else if (std::isinf(s.lo)) {
            x = s.hi - t / (1.0 - t);
        } else {
            x = s.lo + (s.hi - s.lo) * t;
        }
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

// Bisect g(x) - t to machine precision between two points of opposite sign.
double refine_crossing(const std::function<double(double)>& s, double a, double b) {
    double fa = s(a);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = s(mid);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// P_f[ cond(g(X)) ] where cond is "g >= t" (ge = true) or "g <= t".
double level_set_mass(const Density& dx, const Density& dy, double t, bool ge, double tol) {
    const std::vector<double> xs = scan_points(dx, 2048);
    auto sgn = [&](double x) { return ge ? dy.density(x) - t : t - dy.density(x); };

    const Interval sup = dx.support();
    std::vector<double> bounds;  // crossing abscissae, ascending
    for (std::size_t j = 1; j < xs.size(); ++j) {
        const bool in_prev = sgn(xs[j - 1]) >= 0.0;
        const bool in_cur = sgn(xs[j]) >= 0.0;
        if (in_prev != in_cur) bounds.push_back(refine_crossing(sgn, xs[j - 1], xs[j]));
    }

    double mass = 0.0;
    bool inside = sgn(xs.front()) >= 0.0;
    double left = sup.lo;
    for (double b : bounds) {
        if (inside) mass += dx.mass(left, b, tol).value;
        inside = !inside;
        left = b;
    }
    if (inside) mass += dx.mass(left, sup.hi, tol).value;
    return mass;
}

// --- closed form for strictly decreasing candidate densities --------------

bool decreasing_density(const Distribution& d) {
    switch (d.family()) {
        case Family::exponential: return true;
        case Family::gamma:
        case Family::weibull: return d.params()[0] <= 1.0;
        case Family::power: return d.params()[0] < 1.0;
        default: return false;
    }
}

// Inverse of a strictly decreasing density by bisection.
double inverse_decreasing_density(const Distribution& d, double z) {
    const Interval s = d.support();
    double lo = s.lo;
    double hi = std::isinf(s.hi) ? std::max(1.0, 2.0 * s.lo + 1.0) : s.hi;
    if (std::isinf(s.hi)) {
        for (int i = 0; i < 400 && d.density(hi) > z; ++i) hi *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (d.density(mid) > z) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct ClosedProb {
    double p;
    bool in_range;
};

// P[g(X) >= t] for decreasing g: F(g^{-1}(t)), saturating outside the range.
ClosedProb prob_ge_closed(const Distribution& dx, const Distribution& dy, double t) {
    const Interval s = dy.support();
    const double sup_g = dy.density(s.lo);
    const double inf_g = std::isinf(s.hi) ? 0.0 : dy.density(s.hi);
    if (t > sup_g) return {0.0, false};
    if (t <= inf_g) return {1.0, t == inf_g};
    return {dx.cumulative(inverse_decreasing_density(dy, t)), true};
}

ClosedProb prob_le_closed(const Distribution& dx, const Distribution& dy, double t) {
    const Interval s = dy.support();
    const double sup_g = dy.density(s.lo);
    const double inf_g = std::isinf(s.hi) ? 0.0 : dy.density(s.hi);
    if (t < inf_g) return {0.0, false};
    if (t >= sup_g) return {1.0, t == sup_g};
    return {1.0 - dx.cumulative(inverse_decreasing_density(dy, t)), true};
}

// --- finite-difference derivatives for the generic series bound -----------

double central_fd(const std::function<double(double)>& g, double x, int k, double h) {
    switch (k) {
        case 1: return (g(x + h) - g(x - h)) / (2.0 * h);
        case 2: return (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
        case 3:
            return (g(x + 2.0 * h) - 2.0 * g(x + h) + 2.0 * g(x - h) - g(x - 2.0 * h)) /
                   (2.0 * h * h * h);
        case 4:
            return (g(x + 2.0 * h) - 4.0 * g(x + h) + 6.0 * g(x) - 4.0 * g(x - h) +
                    g(x - 2.0 * h)) / (h * h * h * h);
        default: fail("domain-error", "derivative order must be in 1..4");
    }
}

// Richardson over steps h, 2h, 4h; extrapolating from the larger steps keeps
// the subtraction noise of the smallest stencil in check.
double fd_derivative(const std::function<double(double)>& g, double x, int k, double h) {
    const double d1 = central_fd(g, x, k, h);
    const double d2 = central_fd(g, x, k, 2.0 * h);
    const double d4 = central_fd(g, x, k, 4.0 * h);
    const double r1 = (4.0 * d1 - d2) / 3.0;
    const double r2 = (4.0 * d2 - d4) / 3.0;
    return (16.0 * r1 - r2) / 15.0;
}

// Largest stencil offset of fd_derivative in units of the base step.
double stencil_reach(int k) { return k <= 2 ? 4.0 : 8.0; }

// The stencil must stay inside the support; shrinking the step near the
// boundary keeps it there. The covariance kernel q vanishes at the support
// ends, so the extra subtraction noise of the small steps is weighted away.
double boundary_limited_step(double x, double h, int k, const Interval& s) {
    const double reach = stencil_reach(k);
    double step = h;
    if (std::isfinite(s.lo)) step = std::min(step, (x - s.lo) / (reach * 1.02));
    if (std::isfinite(s.hi)) step = std::min(step, (s.hi - x) / (reach * 1.02));
    return step;
}

}  // namespace

BoundResult series_bound_exponential(double lambda, double eta, int n) {
    if (!(lambda > 0.0) || !(eta > 0.0)) fail("domain-error", "rates must be positive");
    if (n < 1) fail("domain-error", "series order must be >= 1");

    BoundResult out;
    out.kind = BoundKind::series;
    out.order_n = n;
    const double r = eta / (lambda + eta);
    out.terms.reserve(n);
    for (int k = 1; k <= n; ++k) {
        out.terms.push_back(0.25 * lambda * lambda * std::pow(r, 2 * k + 2));
    }
    const double exact = lambda * std::pow(eta, 4) /
                         (4.0 * (lambda + 2.0 * eta) * (lambda + eta) * (lambda + eta));
    out.value = exact * (1.0 - std::pow(r, 2 * n));
    return out;
}

BoundResult series_bound_power(double a, double b, int n) {
    if (!(a > 0.0) || !(b > 0.0)) fail("domain-error", "shapes must be positive");
    if (n < 1) fail("domain-error", "series order must be >= 1");
    if (a + b <= 1.0) fail("domain-error", "series bound requires a + b > 1");

    BoundResult out;
    out.kind = BoundKind::series;
    out.order_n = n;
    const double lg_num = std::lgamma(b) + std::lgamma(a + b - 1.0);
    out.terms.reserve(n);
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) {
        double term = 0.0;
        if (!is_nonpositive_integer(b - k)) {
            // lgamma gives log|Gamma|; the sign cancels in the square.
            const double lg_den = std::lgamma(b - k) + std::lgamma(a + b + k);
            term = (a + 2.0 * k) * std::exp(2.0 * (lg_num - lg_den));
        }
        out.terms.push_back(0.25 * a * b * b * term);
        sum += out.terms.back();
    }
    out.value = sum;
    return out;
}

BoundResult chebyshev_bound(const Density& dx, const Density& dy, double eps, double tol) {
    if (!(eps > 0.0)) fail("domain-error", "chebyshev_bound requires eps > 0");

    const double j_xy = inaccuracy(dx, dy, false, tol).value;
    const double t_hi = 2.0 * (eps - j_xy);
    const double t_lo = 2.0 * (-eps - j_xy);

    BoundResult out;
    out.kind = BoundKind::chebyshev;
    out.epsilon = eps;

    const auto* px = dynamic_cast<const Distribution*>(&dx);
    const auto* py = dynamic_cast<const Distribution*>(&dy);
    if (px && py && decreasing_density(*py)) {
        const ClosedProb p1 = prob_ge_closed(*px, *py, t_hi);
        ClosedProb p2{0.0, true};
        if (t_lo >= 0.0) {
            p2 = prob_le_closed(*px, *py, t_lo);
        }
        out.value = eps * eps * (p1.p + p2.p);
        out.valid = p1.in_range && p2.in_range;
        return out;
    }

    double p1 = level_set_mass(dx, dy, t_hi, /*ge=*/true, tol);
    double p2 = t_lo < 0.0 ? 0.0 : level_set_mass(dx, dy, t_lo, /*ge=*/false, tol);
    out.value = eps * eps * (p1 + p2);
    return out;
}

BoundResult series_bound_numeric(const Distribution& dx, const Distribution& dy,
                                 const std::function<double(double)>& q, double delta, int n,
                                 double tol) {
    if (n < 1) fail("domain-error", "series order must be >= 1");
    for (int j = 1; j <= 2 * n - 2; ++j) {
        if (std::fabs(delta - 1.0 / j) < 1e-12) {
            fail("delta-excluded", "delta may not equal 1/" + std::to_string(j));
        }
    }

    // Step for the density derivatives: a small fraction of the candidate's
    // interquartile range. Much smaller steps are cancellation-dominated for
    // k >= 3; see the step-halving consistency check below.
    const double iqr = dy.quantile(0.75) - dy.quantile(0.25);
    const double h = 2e-2 * iqr;
    auto g = [&dy](double x) { return dy.density(x); };

    const Interval support = dy.support();
    auto term_expectation = [&](int k, double step) {
        return dx.expect([&, k, step](double x) {
            const double hx = boundary_limited_step(x, step, k, support);
            if (!(hx > 0.0)) return 0.0;
            return std::pow(q(x), k) * fd_derivative(g, x, k, hx);
        }, tol).value;
    };

    BoundResult out;
    out.kind = BoundKind::series;
    out.order_n = n;
    out.terms.reserve(n);

    double kfact = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) {
        kfact *= k;
        const double num = term_expectation(k, h);
        const double num_check = term_expectation(k, 2.0 * h);
        const double scale = std::max(std::fabs(num), std::fabs(num_check));
        if (std::fabs(num - num_check) > 1e-3 * scale + 1e-13) {
            fail("derivative-instability",
                 "finite-difference derivative of order " + std::to_string(k) +
                     " failed the step-halving consistency check");
        }
        const double eqk = dx.expect([&q, k](double x) { return std::pow(q(x), k); }, tol).value;
        double denom_prod = 1.0;
        for (int j = k - 1; j <= 2 * k - 2; ++j) denom_prod *= (1.0 - j * delta);
        const double term = (num * num) / (kfact * eqk * denom_prod);
        out.terms.push_back(0.25 * term);
        sum += out.terms.back();
    }
    out.value = sum;
    out.valid = std::all_of(out.terms.begin(), out.terms.end(),
                            [](double t) { return t >= 0.0; });
    return out;
}

}  // namespace varj
