#pragma once

#include <array>

#include "varj/density.hpp"

namespace varj {

// Raw and central moments of -f(X)/2 under f. skewj/kurtj are the third
// and fourth central moments.
struct GenFunMoments {
    double j = 0.0;
    double varj = 0.0;
    double skewj = 0.0;
    double kurtj = 0.0;
    std::array<double, 4> raw{};  // m_k = E[(-f(X)/2)^k], k = 1..4
};

// G(t) = E_f[exp(-t f(X)/2)]. G(0) = 1; derivatives at 0 give the raw
// moments above, and derivatives of log G give their cumulants.
double extropy_genfun(const Density& d, double t, double tol = 1e-12);

// E_f[exp(t (f(X)-g(X))/2)]; slope at 0 is the discrimination J(X|Y).
double divergence_genfun(const Density& dx, const Density& dy, double t, double tol = 1e-12);

GenFunMoments extropy_moments(const Density& d, double tol = kDefaultTol);

// Numerical k-th derivative of log G at t = 0 (central differences, base
// step 1e-2, Richardson over three levels). k = 1 recovers J(X), k = 2
// VarJ(X); k = 3, 4 give the higher cumulants of -f(X)/2.
double genfun_derivative_check(const Density& d, int k);

}  // namespace varj
