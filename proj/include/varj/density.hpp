#pragma once

#include <functional>
#include <vector>

#include "varj/quadrature.hpp"

namespace varj {

struct Interval {
    double lo;
    double hi;  // either bound may be +/-infinity
};

// Declared-interval comparison; this is what common-support checks use.
bool same_support(const Interval& a, const Interval& b);

// A density usable by every measure: parametric families, kernel estimates
// and order-statistic densities all implement this. Expectations are the
// one operation whose strategy differs per kind: parametric densities use
// the quantile transform, gridded ones the trapezoid rule on their grid.
class Density {
public:
    virtual ~Density() = default;

    virtual double density(double x) const = 0;
    virtual Interval support() const = 0;

    // log density(x); -inf outside the support. Overridden where a direct
    // log-space form avoids underflow in far tails.
    virtual double log_density(double x) const;

    // E[h(X)] under this density.
    virtual IntegralResult expect(const std::function<double(double)>& h,
                                  double tol = kDefaultTol) const = 0;

    // P(a <= X <= b), by quadrature of the density over the clipped interval.
    virtual IntegralResult mass(double a, double b, double tol = kDefaultTol) const;

    // True when expectations are grid sums (drives MeasureReport::method).
    virtual bool grid_based() const { return false; }
};

// Nonparametric density on a uniform grid; produced by kde(). Evaluation
// between grid points is linear interpolation, zero outside the grid.
class DensityEstimate final : public Density {
public:
    DensityEstimate(std::vector<double> grid, std::vector<double> values,
                    double bandwidth, std::size_t sample_n);

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double bandwidth() const { return bandwidth_; }
    std::size_t sample_n() const { return sample_n_; }

    double density(double x) const override;
    Interval support() const override;
    IntegralResult expect(const std::function<double(double)>& h,
                          double tol = kDefaultTol) const override;
    IntegralResult mass(double a, double b, double tol = kDefaultTol) const override;
    bool grid_based() const override { return true; }

private:
    std::vector<double> grid_;
    std::vector<double> values_;
    double bandwidth_;
    std::size_t sample_n_;
};

// Convenience free function mirroring Density::expect.
inline IntegralResult expectation(const Density& d, const std::function<double(double)>& h,
                                  double tol = kDefaultTol) {
    return d.expect(h, tol);
}

}  // namespace varj
