#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varj/density.hpp"

namespace varj {

enum class Family { exponential, gamma, weibull, lognormal, uniform, power };

const char* family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);  // accepts common aliases
int family_param_count(Family f);

// Observed data, kept sorted ascending.
struct Sample {
    std::vector<double> values;

    static Sample from_values(std::vector<double> v);  // sorts; rejects empty / non-finite

    std::size_t size() const { return values.size(); }
    double min() const { return values.front(); }
    double max() const { return values.back(); }
    double mean() const;
    double sd() const;  // n-1 divisor
};

// A parametric law with density, cumulative, quantile and declared support.
//
// Parameterizations: exponential(rate), gamma(shape, rate), weibull(shape,
// rate) with pdf rate*shape*(x*rate)^(shape-1)*exp(-(rate*x)^shape),
// lognormal(mu, sigma), uniform(a, b), power(a) with pdf a*x^(a-1) on (0,1).
class Distribution final : public Density {
public:
    Distribution(Family family, std::vector<double> params);

    static Distribution exponential(double rate);
    static Distribution gamma(double shape, double rate);
    static Distribution weibull(double shape, double rate);
    static Distribution lognormal(double mu, double sigma);
    static Distribution uniform(double a, double b);
    static Distribution power(double a);

    Family family() const { return family_; }
    const std::vector<double>& params() const { return params_; }

    double density(double x) const override;
    double log_density(double x) const override;  // exact log-space form
    double cumulative(double x) const;
    double quantile(double p) const;     // p in (0,1); closed form or bracketed root
    Interval support() const override;

    IntegralResult expect(const std::function<double(double)>& h,
                          double tol = kDefaultTol) const override;

    std::string describe() const;  // e.g. "weibull(2.101, 0.0122)"

private:
    Family family_;
    std::vector<double> params_;
};

// Maximum likelihood fit. Exponential, lognormal, uniform and power use
// closed forms; gamma and weibull solve their score equations by safeguarded
// Newton (cap 200 iterations, 1e-10 relative convergence).
Distribution fit_mle(Family family, const Sample& s);

double log_likelihood(const Distribution& d, const Sample& s);

}  // namespace varj
