#include "varj/estimation.hpp"

#include <cmath>

#include "varj/error.hpp"

namespace varj {

namespace {

// Linear-interpolation quantile at index (n-1)p of the sorted values.
double interp_quantile(const std::vector<double>& sorted, double p) {
    const double pos = (static_cast<double>(sorted.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(const Sample& s) {
    if (s.size() < 2) fail("degenerate-sample", "bandwidth needs at least two observations");
    const double sd = s.sd();
    if (!(sd > 0.0)) fail("degenerate-sample", "bandwidth needs dispersed data");
    const double iqr = interp_quantile(s.values, 0.75) - interp_quantile(s.values, 0.25);
    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.349);
    return 0.9 * spread * std::pow(static_cast<double>(s.size()), -0.2);
}

DensityEstimate kde(const Sample& s, std::optional<double> bandwidth, int gridpoints,
                    double cut, bool truncate_at_zero) {
    if (s.size() < 2) fail("degenerate-sample", "kde needs at least two observations");
    if (gridpoints < 2) fail("domain-error", "kde needs at least two grid points");
    const double h = bandwidth ? *bandwidth : silverman_bandwidth(s);
    if (!(h > 0.0)) fail("domain-error", "bandwidth must be positive");

    double lo = s.min() - cut * h;
    const double hi = s.max() + cut * h;
    if (truncate_at_zero && lo < 0.0) lo = 0.0;

    const double norm = 1.0 / (static_cast<double>(s.size()) * h * std::sqrt(2.0 * M_PI));
    std::vector<double> xs(gridpoints), ys(gridpoints);
    for (int i = 0; i < gridpoints; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (gridpoints - 1);
        xs[i] = x;
        double acc = 0.0;
        for (double v : s.values) {
            const double z = (x - v) / h;
            acc += std::exp(-0.5 * z * z);
        }
        ys[i] = acc * norm;
    }
    if (truncate_at_zero) {
        const double total = grid_integrate(xs, ys);
        for (double& y : ys) y /= total;
    }
    return DensityEstimate(std::move(xs), std::move(ys), h, s.size());
}

std::vector<MeasureReport> empirical_measures(const DensityEstimate& est,
                                              const Distribution& candidate,
                                              const LogRatioPolicy& policy) {
    for (double x : est.grid()) {
        if (!std::isfinite(candidate.density(x))) {
            fail("non-finite-integrand", "candidate density non-finite on the grid");
        }
    }
    std::vector<MeasureReport> out;
    out.push_back(discrimination(est, candidate));
    out.push_back(varj_divergence(est, candidate));
    out.push_back(kl_divergence(est, candidate, kDefaultTol, policy));
    out.push_back(var_kl(est, candidate, kDefaultTol, policy));
    out.push_back(inaccuracy(est, candidate));
    out.push_back(varj_inaccuracy(est, candidate));
    return out;
}

}  // namespace varj
