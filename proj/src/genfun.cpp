#include "varj/genfun.hpp"

#include <cmath>
#include <map>

#include "varj/error.hpp"
#include "varj/measures.hpp"

namespace varj {

double extropy_genfun(const Density& d, double t, double tol) {
    return d.expect([&d, t](double x) { return std::exp(-0.5 * t * d.density(x)); }, tol).value;
}

double divergence_genfun(const Density& dx, const Density& dy, double t, double tol) {
    if (!dx.grid_based() && !dy.grid_based() && !same_support(dx.support(), dy.support())) {
        fail("support-mismatch", "densities have different declared supports");
    }
    return dx.expect([&dx, &dy, t](double x) {
        return std::exp(0.5 * t * (dx.density(x) - dy.density(x)));
    }, tol).value;
}

GenFunMoments extropy_moments(const Density& d, double tol) {
    GenFunMoments out;
    for (int k = 1; k <= 4; ++k) {
        out.raw[k - 1] = d.expect([&d, k](double x) {
            return std::pow(-0.5 * d.density(x), k);
        }, tol).value;
    }
    const double m1 = out.raw[0], m2 = out.raw[1], m3 = out.raw[2], m4 = out.raw[3];
    out.j = m1;
    out.varj = m2 - m1 * m1;
    out.skewj = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
    out.kurtj = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
    return out;
}

namespace {

// k-th central difference of lnG with step h.
double central_diff(const std::function<double(double)>& f, int k, double h) {
    switch (k) {
        case 1: return (f(h) - f(-h)) / (2.0 * h);
        case 2: return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        case 3: return (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
        case 4:
            return (f(2.0 * h) - 4.0 * f(h) + 6.0 * f(0.0) - 4.0 * f(-h) + f(-2.0 * h)) /
                   (h * h * h * h);
        default: fail("domain-error", "derivative order must be in 1..4");
    }
}

}  // namespace

double genfun_derivative_check(const Density& d, int k) {
    if (k < 1 || k > 4) fail("domain-error", "derivative order must be in 1..4");

    std::map<double, double> cache;
    auto lng = [&](double t) {
        auto it = cache.find(t);
        if (it != cache.end()) return it->second;
        const double g = extropy_genfun(d, t, 1e-13);
        if (!(g > 0.0) || !std::isfinite(g)) {
            fail("step-degeneracy", "generating function evaluation failed at t = " + std::to_string(t));
        }
        const double v = std::log(g);
        cache.emplace(t, v);
        return v;
    };

    const double h0 = 1e-2;
    const double d1 = central_diff(lng, k, h0);
    const double d2 = central_diff(lng, k, h0 / 2.0);
    const double d3 = central_diff(lng, k, h0 / 4.0);
    // The base stencils carry O(h^2) error; two Richardson stages.
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d3 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

}  // namespace varj
