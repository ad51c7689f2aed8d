#pragma once

#include "varj/distributions.hpp"
#include "varj/measures.hpp"

namespace varj {

struct OrderStatSpec {
    Distribution parent;
    int i = 1;  // rank, 1..n
    int n = 1;  // sample size
};

// Density of the i-th order statistic of n iid draws from the parent:
// f F^{i-1} (1-F)^{n-i} / B(i, n-i+1). Expectations route through the
// parent quantile with a Beta(i, n-i+1) weight, so endpoint behaviour is
// handled by the open quadrature rules.
class OrderStatDensity final : public Density {
public:
    explicit OrderStatDensity(OrderStatSpec spec);

    const OrderStatSpec& spec() const { return spec_; }

    double density(double x) const override;
    double log_density(double x) const override;
    Interval support() const override;
    IntegralResult expect(const std::function<double(double)>& h,
                          double tol = kDefaultTol) const override;

private:
    OrderStatSpec spec_;
    double log_beta_norm_;
};

// E[ f(F^{-1}(U))^power ] with U ~ Beta(a, b), f and F from the parent.
double beta_expectation(const Distribution& parent, double a, double b, int power,
                        double tol = kDefaultTol);

// Var_parent[-f_{i:n}(X)/2] via the Beta-expectation identity
// (1/4){ B(2i-1, 2n-2i+1)/B^2(i, n-i+1) E[f^2(F^{-1}(U2))] - E^2[f(F^{-1}(U1))] }.
MeasureReport varj_inaccuracy_order(const OrderStatSpec& spec, double tol = kDefaultTol);

// Var_{f_{i:n}}[(f_{i:n}(X) - f(X))/2] via the three-Beta identity with
// U3 ~ Beta(3i-2, 3n-3i+1).
MeasureReport varj_divergence_order(const OrderStatSpec& spec, double tol = kDefaultTol);

}  // namespace varj
