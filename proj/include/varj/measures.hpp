#pragma once

#include <functional>
#include <string>

#include "varj/density.hpp"

namespace varj {

enum class Method { closed_form, quadrature, grid };

const char* method_name(Method m);

// One computed scalar measure. `name` is the catalogue identifier used for
// reporting and JSON keys ("J(X)", "VarJ(X|Y)", "K(X,Y)", ...).
struct MeasureReport {
    std::string name;
    double value = 0.0;
    double abs_error = 0.0;
    bool weighted = false;
    Method method = Method::quadrature;
};

// Exclusion policy for grid-based log-ratio integrands (K, VarK). Grid
// points are dropped where the estimate is below est_floor or the candidate
// density is below candidate_rel_floor times its own maximum on the grid;
// there the ratio is dominated by kernel boundary tails and the integral
// diverges as the grid widens. Set candidate_rel_floor = 0 to keep every
// point where the candidate is positive.
struct LogRatioPolicy {
    double est_floor = 1e-300;
    double candidate_rel_floor = 5e-3;
};

// J(X) = -1/2 E_f[f(X)]; weighted variant uses x f(x).
MeasureReport extropy(const Density& d, bool weighted = false, double tol = kDefaultTol);

// VarJ(X) = Var_f[-f(X)/2]; weighted variant Var_f[-X f(X)/2].
MeasureReport varextropy(const Density& d, bool weighted = false, double tol = kDefaultTol);

// J(X,Y) = -1/2 E_f[g(X)]; reduces to extropy at g = f.
MeasureReport inaccuracy(const Density& dx, const Density& dy, bool weighted = false,
                         double tol = kDefaultTol);

// J(X|Y) = 1/2 E_f[f(X) - g(X)]; satisfies J(X,Y) = J(X) + J(X|Y).
MeasureReport discrimination(const Density& dx, const Density& dy, bool weighted = false,
                             double tol = kDefaultTol);

// VarJ(X,Y) = Var_f[-g(X)/2]; zero iff Y is uniform on the common support.
MeasureReport varj_inaccuracy(const Density& dx, const Density& dy, bool weighted = false,
                              double tol = kDefaultTol);

// VarJ(X|Y) = Var_f[(f(X) - g(X))/2]; zero iff the densities coincide.
MeasureReport varj_divergence(const Density& dx, const Density& dy, double tol = kDefaultTol);

// K(X,Y) = E_f[log(f/g)] and VarK(X,Y) = Var_f[log(f/g)].
MeasureReport kl_divergence(const Density& dx, const Density& dy, double tol = kDefaultTol,
                            const LogRatioPolicy& policy = {});
MeasureReport var_kl(const Density& dx, const Density& dy, double tol = kDefaultTol,
                     const LogRatioPolicy& policy = {});

// H(X) = -E_f[log f] and V(X) = Var_f[log f].
MeasureReport entropy(const Density& d, double tol = kDefaultTol);
MeasureReport varentropy(const Density& d, double tol = kDefaultTol);

// Cov_f(h1(X), h2(X)), two-pass.
double density_cov(const Density& d, const std::function<double(double)>& h1,
                   const std::function<double(double)>& h2, double tol = kDefaultTol);

// Two-pass helpers shared by the measures; exposed because the property
// tests assert identities directly against them.
IntegralResult mean_under(const Density& d, const std::function<double(double)>& h,
                          double tol = kDefaultTol);
IntegralResult variance_under(const Density& d, const std::function<double(double)>& h,
                              double tol = kDefaultTol);

}  // namespace varj
