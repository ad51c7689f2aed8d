#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "varj/distributions.hpp"

namespace varj {

enum class BoundKind { series, chebyshev };

struct BoundResult {
    double value = 0.0;
    BoundKind kind = BoundKind::series;
    std::optional<int> order_n;
    std::optional<double> epsilon;
    bool valid = true;
    std::vector<double> terms;  // per-k series terms; empty for chebyshev
};

// Covariance-identity series lower bound for VarJ(Exp(lambda), Exp(eta)):
// value = lambda eta^4 / (4 (lambda+2eta)(lambda+eta)^2) * [1 - (eta/(lambda+eta))^{2n}],
// term_k = lambda^2 eta^{2k+2} / (4 (lambda+eta)^{2k+2}).
BoundResult series_bound_exponential(double lambda, double eta, int n);

// Same bound for X ~ power(a), Y ~ power(b) on (0,1):
// (a b^2 / 4) sum_{k<=n} (a+2k) (Gamma(b)Gamma(a+b-1) / (Gamma(b-k)Gamma(a+b+k)))^2,
// with 1/Gamma(nonpositive integer) = 0, so terms with integer b-k <= 0 vanish.
BoundResult series_bound_power(double a, double b, int n);

// Chebyshev lower bound eps^2 { P_f[g(X) >= 2(eps-J)] + P_f[g(X) <= 2(-eps-J)] }
// with J = J(X,Y). The generic path locates the level sets of g numerically
// and integrates f over them; when both inputs are parametric and g is
// strictly decreasing, the closed form F(g^{-1}(.)) + 1 - F(g^{-1}(.)) is used
// instead, with `valid` cleared if an inverse argument left the range of g
// (the saturated probability 0/1 is still used, so `value` stays correct).
BoundResult chebyshev_bound(const Density& dx, const Density& dy, double eps,
                            double tol = 1e-12);

// Generic n-term series bound: (1/4) sum_k E^2[q^k g^{(k)}] /
// (k! E[q^k] prod_{j=k-1}^{2k-2} (1-j delta)). The caller supplies the
// covariance kernel q and index delta of the weighting law dx; derivatives
// of dy's density are central finite differences (step 1e-4 x the IQR of dx,
// Richardson extrapolated from steps h, 2h, 4h).
BoundResult series_bound_numeric(const Distribution& dx, const Distribution& dy,
                                 const std::function<double(double)>& q, double delta, int n,
                                 double tol = kDefaultTol);

}  // namespace varj
