#include "varj/measures.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "varj/error.hpp"

namespace varj {

namespace {

using Fn = std::function<double(double)>;

void check_pair(const Density& dx, const Density& dy) {
    // Declared-interval equality between two parametric laws; when either
    // side is grid-based the estimate's grid defines the integration domain.
    if (dx.grid_based() || dy.grid_based()) return;
    if (!same_support(dx.support(), dy.support())) {
        fail("support-mismatch", "densities have different declared supports");
    }
}

void check_weighted_support(const Density& d) {
    if (d.support().lo < 0.0) {
        fail("support-violation", "weighted measures require non-negative support");
    }
}

Method method_of(const Density& dx) {
    return dx.grid_based() ? Method::grid : Method::quadrature;
}

MeasureReport report(std::string name, const IntegralResult& r, bool weighted, Method m) {
    return {std::move(name), r.value, r.abs_error, weighted, m};
}

// Masked trapezoid sums for grid-based log-ratio integrands.
struct GridLogRatio {
    double mean;
    double var;
    double err;
};

GridLogRatio grid_log_ratio(const DensityEstimate& est, const Density& dy,
                            const LogRatioPolicy& policy) {
    const auto& xs = est.grid();
    const auto& fs = est.values();
    const std::size_t m = xs.size();

    std::vector<double> g(m);
    double gmax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        g[i] = dy.density(xs[i]);
        gmax = std::max(gmax, g[i]);
    }
    const double gfloor = policy.candidate_rel_floor * gmax;

    std::vector<char> keep(m, 0);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (fs[i] >= policy.est_floor && g[i] > 0.0 && g[i] >= gfloor) {
            keep[i] = 1;
            ++kept;
        }
    }
    if (kept == 0) fail("all-mass-excluded", "every grid point was excluded from the log-ratio");

    std::vector<double> lr(m, 0.0), y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (keep[i]) {
            lr[i] = std::log(fs[i] / g[i]);
            y[i] = fs[i] * lr[i];
        }
    }
    const double mean = grid_integrate(xs, y);
    for (std::size_t i = 0; i < m; ++i) {
        y[i] = keep[i] ? fs[i] * (lr[i] - mean) * (lr[i] - mean) : 0.0;
    }
    const double var = grid_integrate(xs, y);
    return {mean, var, 0.0};
}

const DensityEstimate* as_grid(const Density& d) {
    return dynamic_cast<const DensityEstimate*>(&d);
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed-form";
        case Method::quadrature: return "quadrature";
        case Method::grid: return "grid";
    }
    return "?";
}

IntegralResult mean_under(const Density& d, const Fn& h, double tol) {
    return d.expect(h, tol);
}

IntegralResult variance_under(const Density& d, const Fn& h, double tol) {
    const IntegralResult m = d.expect(h, tol);
    IntegralResult v = d.expect([&h, m](double x) {
        const double c = h(x) - m.value;
        return c * c;
    }, tol);
    v.abs_error += 2.0 * std::fabs(m.value) * m.abs_error;
    v.evaluations += m.evaluations;
    v.converged = v.converged && m.converged;
    return v;
}

double density_cov(const Density& d, const Fn& h1, const Fn& h2, double tol) {
    const double m1 = d.expect(h1, tol).value;
    const double m2 = d.expect(h2, tol).value;
    return d.expect([&](double x) { return (h1(x) - m1) * (h2(x) - m2); }, tol).value;
}

MeasureReport extropy(const Density& d, bool weighted, double tol) {
    if (weighted) check_weighted_support(d);
    auto h = [&d, weighted](double x) {
        const double f = d.density(x);
        return -0.5 * (weighted ? x * f : f);
    };
    return report(weighted ? "J^w(X)" : "J(X)", mean_under(d, h, tol), weighted, method_of(d));
}

MeasureReport varextropy(const Density& d, bool weighted, double tol) {
    if (weighted) check_weighted_support(d);
    auto h = [&d, weighted](double x) {
        const double f = d.density(x);
        return -0.5 * (weighted ? x * f : f);
    };
    return report(weighted ? "VarJ^w(X)" : "VarJ(X)", variance_under(d, h, tol), weighted,
                  method_of(d));
}

MeasureReport inaccuracy(const Density& dx, const Density& dy, bool weighted, double tol) {
    check_pair(dx, dy);
    if (weighted) {
        check_weighted_support(dx);
        check_weighted_support(dy);
    }
    auto h = [&dy, weighted](double x) {
        const double g = dy.density(x);
        return -0.5 * (weighted ? x * g : g);
    };
    return report(weighted ? "J^w(X,Y)" : "J(X,Y)", mean_under(dx, h, tol), weighted,
                  method_of(dx));
}

MeasureReport discrimination(const Density& dx, const Density& dy, bool weighted, double tol) {
    check_pair(dx, dy);
    if (weighted) {
        check_weighted_support(dx);
        check_weighted_support(dy);
    }
    auto h = [&dx, &dy, weighted](double x) {
        const double diff = dx.density(x) - dy.density(x);
        return 0.5 * (weighted ? x * diff : diff);
    };
    return report(weighted ? "J^w(X|Y)" : "J(X|Y)", mean_under(dx, h, tol), weighted,
                  method_of(dx));
}

MeasureReport varj_inaccuracy(const Density& dx, const Density& dy, bool weighted, double tol) {
    check_pair(dx, dy);
    if (weighted) {
        check_weighted_support(dx);
        check_weighted_support(dy);
    }
    auto h = [&dy, weighted](double x) {
        const double g = dy.density(x);
        return -0.5 * (weighted ? x * g : g);
    };
    return report(weighted ? "VarJ^w(X,Y)" : "VarJ(X,Y)", variance_under(dx, h, tol), weighted,
                  method_of(dx));
}

MeasureReport varj_divergence(const Density& dx, const Density& dy, double tol) {
    check_pair(dx, dy);
    auto h = [&dx, &dy](double x) { return 0.5 * (dx.density(x) - dy.density(x)); };
    return report("VarJ(X|Y)", variance_under(dx, h, tol), false, method_of(dx));
}

namespace {

// Log-ratio in log space: far-tail density underflow must not read as a
// vanished reference law.
std::function<double(double)> log_ratio_of(const Density& dx, const Density& dy) {
    return [&dx, &dy](double x) {
        constexpr double neg_inf = -std::numeric_limits<double>::infinity();
        const double lf = dx.log_density(x);
        const double lg = dy.log_density(x);
        if (lg == neg_inf && lf > neg_inf) {
            fail("support-violation", "reference density vanishes where f is positive");
        }
        return lf - lg;
    };
}

}  // namespace

MeasureReport kl_divergence(const Density& dx, const Density& dy, double tol,
                            const LogRatioPolicy& policy) {
    check_pair(dx, dy);
    if (const DensityEstimate* est = as_grid(dx)) {
        const GridLogRatio r = grid_log_ratio(*est, dy, policy);
        return {"K(X,Y)", r.mean, r.err, false, Method::grid};
    }
    return report("K(X,Y)", mean_under(dx, log_ratio_of(dx, dy), tol), false, Method::quadrature);
}

MeasureReport var_kl(const Density& dx, const Density& dy, double tol,
                     const LogRatioPolicy& policy) {
    check_pair(dx, dy);
    if (const DensityEstimate* est = as_grid(dx)) {
        const GridLogRatio r = grid_log_ratio(*est, dy, policy);
        return {"VarK(X,Y)", r.var, r.err, false, Method::grid};
    }
    return report("VarK(X,Y)", variance_under(dx, log_ratio_of(dx, dy), tol), false,
                  Method::quadrature);
}

namespace {

// f log f -> 0 as f -> 0, so zero-valued grid points contribute nothing.
GridLogRatio grid_entropy_moments(const DensityEstimate& est) {
    const auto& xs = est.grid();
    const auto& fs = est.values();
    const std::size_t m = xs.size();
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (fs[i] > 0.0) y[i] = -fs[i] * std::log(fs[i]);
    }
    const double mean = grid_integrate(xs, y);
    for (std::size_t i = 0; i < m; ++i) {
        if (fs[i] > 0.0) {
            const double c = -std::log(fs[i]) - mean;
            y[i] = fs[i] * c * c;
        } else {
            y[i] = 0.0;
        }
    }
    return {mean, grid_integrate(xs, y), 0.0};
}

}  // namespace

MeasureReport entropy(const Density& d, double tol) {
    if (const DensityEstimate* est = as_grid(d)) {
        return {"H(X)", grid_entropy_moments(*est).mean, 0.0, false, Method::grid};
    }
    auto h = [&d](double x) { return -d.log_density(x); };
    return report("H(X)", mean_under(d, h, tol), false, method_of(d));
}

MeasureReport varentropy(const Density& d, double tol) {
    if (const DensityEstimate* est = as_grid(d)) {
        return {"V(X)", grid_entropy_moments(*est).var, 0.0, false, Method::grid};
    }
    auto h = [&d](double x) { return -d.log_density(x); };
    return report("V(X)", variance_under(d, h, tol), false, method_of(d));
}

}  // namespace varj
