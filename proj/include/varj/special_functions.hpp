#pragma once

namespace varj {

// Digamma (logarithmic derivative of the gamma function), x > 0.
double digamma(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a),
// a > 0, x >= 0.
double gamma_p(double a, double x);

// log of the beta function B(a, b), a, b > 0.
double log_beta(double a, double b);

// Standard normal CDF and its inverse. The inverse is accurate to a few ulp
// over (0, 1); it underpins the lognormal quantile.
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace varj
