#include "varj/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varj/error.hpp"
#include "varj/special_functions.hpp"

namespace varj {

namespace {

void check_spec(const OrderStatSpec& spec) {
    if (spec.n < 1 || spec.i < 1 || spec.i > spec.n) {
        fail("domain-error", "order statistic requires 1 <= i <= n");
    }
}

double beta_log_pdf(double u, double a, double b, double log_norm) {
    double acc = -log_norm;
    if (a != 1.0) acc += (a - 1.0) * std::log(u);
    if (b != 1.0) acc += (b - 1.0) * std::log1p(-u);
    return acc;
}

}  // namespace

OrderStatDensity::OrderStatDensity(OrderStatSpec spec) : spec_(std::move(spec)) {
    check_spec(spec_);
    log_beta_norm_ = log_beta(static_cast<double>(spec_.i),
                              static_cast<double>(spec_.n - spec_.i + 1));
}

double OrderStatDensity::log_density(double x) const {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    const double lf = spec_.parent.log_density(x);
    if (lf == neg_inf) return neg_inf;
    const double F = spec_.parent.cumulative(x);
    double acc = lf - log_beta_norm_;
    if (spec_.i > 1) {
        if (F == 0.0) return neg_inf;
        acc += (spec_.i - 1) * std::log(F);
    }
    if (spec_.i < spec_.n) {
        if (F == 1.0) return neg_inf;
        acc += (spec_.n - spec_.i) * std::log1p(-F);
    }
    return acc;
}

double OrderStatDensity::density(double x) const {
    const double l = log_density(x);
    return l == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(l);
}

Interval OrderStatDensity::support() const { return spec_.parent.support(); }

IntegralResult OrderStatDensity::expect(const std::function<double(double)>& h, double tol) const {
    const double a = static_cast<double>(spec_.i);
    const double b = static_cast<double>(spec_.n - spec_.i + 1);
    const double ln = log_beta_norm_;
    const Distribution& parent = spec_.parent;
    constexpr double ulo = std::numeric_limits<double>::min();
    const double uhi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return integrate([&, a, b, ln, ulo, uhi](double u) {
        u = std::clamp(u, ulo, uhi);
        return h(parent.quantile(u)) * std::exp(beta_log_pdf(u, a, b, ln));
    }, 0.0, 1.0, tol);
}

double beta_expectation(const Distribution& parent, double a, double b, int power, double tol) {
    if (!(a > 0.0) || !(b > 0.0)) fail("domain-error", "beta_expectation requires a, b > 0");
    if (power != 1 && power != 2) fail("domain-error", "power must be 1 or 2");
    const double ln = log_beta(a, b);
    return integrate([&parent, a, b, ln, power](double u) {
        const double f = parent.density(parent.quantile(u));
        const double w = std::exp(beta_log_pdf(u, a, b, ln));
        return (power == 1 ? f : f * f) * w;
    }, 0.0, 1.0, tol).value;
}

MeasureReport varj_inaccuracy_order(const OrderStatSpec& spec, double tol) {
    check_spec(spec);
    const double i = spec.i, n = spec.n;
    const double logB1 = log_beta(i, n - i + 1);
    const double logB2 = log_beta(2.0 * i - 1.0, 2.0 * (n - i) + 1.0);
    const double ratio = std::exp(logB2 - 2.0 * logB1);
    const double e2 = beta_expectation(spec.parent, 2.0 * i - 1.0, 2.0 * (n - i) + 1.0, 2, tol);
    const double e1 = beta_expectation(spec.parent, i, n - i + 1.0, 1, tol);
    const double value = 0.25 * (ratio * e2 - e1 * e1);
    return {"VarJ(X,Y)", value, 0.0, false, Method::quadrature};
}

MeasureReport varj_divergence_order(const OrderStatSpec& spec, double tol) {
    check_spec(spec);
    const double i = spec.i, n = spec.n;
    const double logB1 = log_beta(i, n - i + 1);
    const double r2 = std::exp(log_beta(2.0 * i - 1.0, 2.0 * (n - i) + 1.0) - 2.0 * logB1);
    const double r3 = std::exp(log_beta(3.0 * i - 2.0, 3.0 * (n - i) + 1.0) - 3.0 * logB1);
    const double e1f = beta_expectation(spec.parent, i, n - i + 1.0, 1, tol);
    const double e1f2 = beta_expectation(spec.parent, i, n - i + 1.0, 2, tol);
    const double e2f = beta_expectation(spec.parent, 2.0 * i - 1.0, 2.0 * (n - i) + 1.0, 1, tol);
    const double e2f2 = beta_expectation(spec.parent, 2.0 * i - 1.0, 2.0 * (n - i) + 1.0, 2, tol);
    const double e3f2 = beta_expectation(spec.parent, 3.0 * i - 2.0, 3.0 * (n - i) + 1.0, 2, tol);
    const double mean_part = r2 * e2f - e1f;
    const double value = 0.25 * (r3 * e3f2 - 2.0 * r2 * e2f2 + e1f2 - mean_part * mean_part);
    return {"VarJ(X|Y)", value, 0.0, false, Method::quadrature};
}

}  // namespace varj
