#include "varj/density.hpp"

#include <algorithm>
#include <cmath>

#include "varj/error.hpp"

namespace varj {

bool same_support(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

double Density::log_density(double x) const { return std::log(density(x)); }

IntegralResult Density::mass(double a, double b, double tol) const {
    const Interval s = support();
    const double lo = std::max(a, s.lo);
    const double hi = std::min(b, s.hi);
    if (!(lo < hi)) return {0.0, 0.0, 0, true};
    return integrate([this](double x) { return density(x); }, lo, hi, tol);
}

DensityEstimate::DensityEstimate(std::vector<double> grid, std::vector<double> values,
                                 double bandwidth, std::size_t sample_n)
    : grid_(std::move(grid)), values_(std::move(values)), bandwidth_(bandwidth), sample_n_(sample_n) {
    if (grid_.size() != values_.size()) fail("length-mismatch", "grid and values differ in length");
    if (grid_.size() < 2) fail("invalid-parameters", "density estimate needs at least two grid points");
    if (!(bandwidth_ > 0.0)) fail("invalid-parameters", "bandwidth must be positive");
    const double step = grid_[1] - grid_[0];
    if (!(step > 0.0)) fail("invalid-parameters", "grid must be increasing");
    for (std::size_t i = 1; i < grid_.size(); ++i) {
        const double d = grid_[i] - grid_[i - 1];
        if (std::fabs(d - step) > 1e-9 * std::max(1.0, std::fabs(step))) {
            fail("invalid-parameters", "grid must be uniform");
        }
    }
    for (double v : values_) {
        if (!(v >= 0.0)) fail("invalid-parameters", "density values must be non-negative");
    }
    const double total = grid_integrate(grid_, values_);
    if (std::fabs(total - 1.0) > 1e-3) {
        fail("invalid-parameters", "density estimate integrates to " + std::to_string(total));
    }
}

double DensityEstimate::density(double x) const {
    if (x < grid_.front() || x > grid_.back()) return 0.0;
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    if (it == grid_.begin()) return values_.front();
    if (it == grid_.end()) return values_.back();
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
    const double t = (x - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
    return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

Interval DensityEstimate::support() const { return {grid_.front(), grid_.back()}; }

IntegralResult DensityEstimate::expect(const std::function<double(double)>& h, double) const {
    std::vector<double> ys(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        const double v = h(grid_[i]);
        if (!std::isfinite(v)) {
            fail("non-finite-integrand", "integrand non-finite at grid point " + std::to_string(grid_[i]));
        }
        ys[i] = v * values_[i];
    }
    const double full = grid_integrate(grid_, ys);
    // Error gauge: compare against the half-resolution trapezoid.
    std::vector<double> cx, cy;
    for (std::size_t i = 0; i < grid_.size(); i += 2) {
        cx.push_back(grid_[i]);
        cy.push_back(ys[i]);
    }
    if (cx.back() != grid_.back()) {
        cx.push_back(grid_.back());
        cy.push_back(ys.back());
    }
    const double coarse = grid_integrate(cx, cy);
    return {full, std::fabs(full - coarse) / 3.0, static_cast<long>(grid_.size()), true};
}

IntegralResult DensityEstimate::mass(double a, double b, double) const {
    const double lo = std::max(a, grid_.front());
    const double hi = std::min(b, grid_.back());
    if (!(lo < hi)) return {0.0, 0.0, 0, true};
    std::vector<double> xs, ys;
    xs.push_back(lo);
    ys.push_back(density(lo));
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (grid_[i] > lo && grid_[i] < hi) {
            xs.push_back(grid_[i]);
            ys.push_back(values_[i]);
        }
    }
    xs.push_back(hi);
    ys.push_back(density(hi));
    return {grid_integrate(xs, ys), 0.0, static_cast<long>(xs.size()), true};
}

}  // namespace varj
