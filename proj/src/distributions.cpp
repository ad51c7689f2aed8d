#include "varj/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "varj/error.hpp"
#include "varj/special_functions.hpp"

namespace varj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kFitIterationCap = 200;

// Newton iteration kept inside a sign-changing bracket; falls back to
// bisection whenever the step leaves the bracket.
template <typename F, typename DF>
double newton_safeguarded(F f, DF df, double lo, double hi, double x0,
                          double rel_tol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) fail("no-convergence", "root not bracketed");

    double x = std::clamp(x0, lo, hi);
    for (int it = 0; it < max_iter; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double d = df(x);
        double next = x - fx / d;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);
        }
        const double change = std::fabs(next - x);
        x = next;
        if (change <= rel_tol * std::max(1.0, std::fabs(x))) return x;
    }
    fail("no-convergence", "safeguarded Newton hit the iteration cap");
}

void require(bool ok, const char* what) {
    if (!ok) fail("invalid-parameters", what);
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::exponential: return "exponential";
        case Family::gamma: return "gamma";
        case Family::weibull: return "weibull";
        case Family::lognormal: return "lognormal";
        case Family::uniform: return "uniform";
        case Family::power: return "power";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "exponential" || s == "exp") return Family::exponential;
    if (s == "gamma") return Family::gamma;
    if (s == "weibull") return Family::weibull;
    if (s == "lognormal" || s == "lognorm" || s == "lnorm" || s == "lg") return Family::lognormal;
    if (s == "uniform" || s == "unif") return Family::uniform;
    if (s == "power") return Family::power;
    return std::nullopt;
}

int family_param_count(Family f) {
    switch (f) {
        case Family::exponential:
        case Family::power: return 1;
        default: return 2;
    }
}

Sample Sample::from_values(std::vector<double> v) {
    if (v.empty()) fail("empty-dataset", "sample must contain at least one value");
    for (double x : v) {
        if (!std::isfinite(x)) fail("domain-error", "sample values must be finite");
    }
    std::sort(v.begin(), v.end());
    return Sample{std::move(v)};
}

double Sample::mean() const {
    double acc = 0.0;
    for (double x : values) acc += x;
    return acc / static_cast<double>(values.size());
}

double Sample::sd() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double acc = 0.0;
    for (double x : values) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

Distribution::Distribution(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
    if (static_cast<int>(params_.size()) != family_param_count(family_)) {
        fail("invalid-parameters", std::string(family_name(family_)) + " takes " +
                                       std::to_string(family_param_count(family_)) + " parameter(s)");
    }
    for (double p : params_) require(std::isfinite(p), "parameters must be finite");
    switch (family_) {
        case Family::exponential:
            require(params_[0] > 0.0, "exponential rate must be > 0");
            break;
        case Family::gamma:
        case Family::weibull:
            require(params_[0] > 0.0 && params_[1] > 0.0, "shape and rate must be > 0");
            break;
        case Family::lognormal:
            require(params_[1] > 0.0, "lognormal sigma must be > 0");
            break;
        case Family::uniform:
            require(params_[0] < params_[1], "uniform requires a < b");
            break;
        case Family::power:
            require(params_[0] > 0.0, "power shape must be > 0");
            break;
    }
}

Distribution Distribution::exponential(double rate) { return {Family::exponential, {rate}}; }
Distribution Distribution::gamma(double shape, double rate) { return {Family::gamma, {shape, rate}}; }
Distribution Distribution::weibull(double shape, double rate) { return {Family::weibull, {shape, rate}}; }
Distribution Distribution::lognormal(double mu, double sigma) { return {Family::lognormal, {mu, sigma}}; }
Distribution Distribution::uniform(double a, double b) { return {Family::uniform, {a, b}}; }
Distribution Distribution::power(double a) { return {Family::power, {a}}; }

Interval Distribution::support() const {
    switch (family_) {
        case Family::uniform: return {params_[0], params_[1]};
        case Family::power: return {0.0, 1.0};
        default: return {0.0, kInf};
    }
}

double Distribution::log_density(double x) const {
    switch (family_) {
        case Family::exponential: {
            const double lam = params_[0];
            if (x < 0.0) return -kInf;
            return std::log(lam) - lam * x;
        }
        case Family::gamma: {
            const double a = params_[0], lam = params_[1];
            if (x < 0.0) return -kInf;
            if (x == 0.0) {
                if (a > 1.0) return -kInf;
                if (a == 1.0) return std::log(lam);
                return kInf;  // density diverges at the origin for shape < 1
            }
            return a * std::log(lam) - std::lgamma(a) + (a - 1.0) * std::log(x) - lam * x;
        }
        case Family::weibull: {
            const double a = params_[0], lam = params_[1];
            if (x < 0.0) return -kInf;
            if (x == 0.0) {
                if (a > 1.0) return -kInf;
                if (a == 1.0) return std::log(lam);
                return kInf;
            }
            const double z = x * lam;
            return std::log(lam * a) + (a - 1.0) * std::log(z) - std::pow(z, a);
        }
        case Family::lognormal: {
            const double mu = params_[0], sig = params_[1];
            if (x <= 0.0) return -kInf;
            const double z = (std::log(x) - mu) / sig;
            return -std::log(x * sig) - 0.5 * std::log(2.0 * M_PI) - 0.5 * z * z;
        }
        case Family::uniform: {
            const double a = params_[0], b = params_[1];
            if (x < a || x > b) return -kInf;
            return -std::log(b - a);
        }
        case Family::power: {
            const double a = params_[0];
            if (x < 0.0 || x > 1.0) return -kInf;
            if (x == 0.0) {
                if (a > 1.0) return -kInf;
                if (a == 1.0) return 0.0;
                return kInf;
            }
            return std::log(a) + (a - 1.0) * std::log(x);
        }
    }
    return -kInf;
}

double Distribution::density(double x) const {
    const double l = log_density(x);
    if (l == -kInf) return 0.0;
    return std::exp(l);
}

double Distribution::cumulative(double x) const {
    switch (family_) {
        case Family::exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-params_[0] * x);
        case Family::gamma:
            return x <= 0.0 ? 0.0 : gamma_p(params_[0], params_[1] * x);
        case Family::weibull:
            return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x * params_[1], params_[0]));
        case Family::lognormal:
            return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - params_[0]) / params_[1]);
        case Family::uniform: {
            const double a = params_[0], b = params_[1];
            if (x <= a) return 0.0;
            if (x >= b) return 1.0;
            return (x - a) / (b - a);
        }
        case Family::power:
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return std::pow(x, params_[0]);
    }
    return 0.0;
}

double Distribution::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0)) fail("domain-error", "quantile requires p in (0,1)");
    switch (family_) {
        case Family::exponential:
            return -std::log1p(-p) / params_[0];
        case Family::weibull:
            return std::pow(-std::log1p(-p), 1.0 / params_[0]) / params_[1];
        case Family::lognormal:
            return std::exp(params_[0] + params_[1] * normal_quantile(p));
        case Family::uniform:
            return params_[0] + p * (params_[1] - params_[0]);
        case Family::power:
            return std::pow(p, 1.0 / params_[0]);
        case Family::gamma: {
            // Wilson-Hilferty start, then Newton on the CDF inside a bracket.
            const double a = params_[0], lam = params_[1];
            const double z = normal_quantile(p);
            const double c = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
            double x0 = a * c * c * c;
            if (!(x0 > 0.0)) x0 = a * std::exp(z / std::sqrt(a));  // deep lower tail
            double lo = x0, hi = x0;
            for (int i = 0; i < 200 && gamma_p(a, lo) > p; ++i) lo *= 0.5;
            for (int i = 0; i < 200 && gamma_p(a, hi) < p; ++i) hi *= 2.0;
            const double x = newton_safeguarded(
                [&](double t) { return gamma_p(a, t) - p; },
                [&](double t) { return std::exp((a - 1.0) * std::log(t) - t - std::lgamma(a)); },
                lo, hi, x0, 1e-12, kFitIterationCap);
            return x / lam;
        }
    }
    fail("domain-error", "quantile: unsupported family");
}

IntegralResult Distribution::expect(const std::function<double(double)>& h, double tol) const {
    // E[h(X)] = int_0^1 h(Q(u)) du. The open Kronrod nodes never touch the
    // endpoints analytically, but sub-ulp panels can round onto them, so
    // nodes are clamped into the open interval.
    constexpr double lo = std::numeric_limits<double>::min();
    const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return integrate([this, &h, lo, hi](double u) { return h(quantile(std::clamp(u, lo, hi))); },
                     0.0, 1.0, tol);
}

std::string Distribution::describe() const {
    std::ostringstream os;
    os << family_name(family_) << "(";
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) os << ", ";
        os << params_[i];
    }
    os << ")";
    return os.str();
}

namespace {

double mean_log(const Sample& s) {
    double acc = 0.0;
    for (double x : s.values) acc += std::log(x);
    return acc / static_cast<double>(s.size());
}

void check_positive_sample(const Sample& s, Family f) {
    if (s.values.front() <= 0.0) {
        fail("domain-error", std::string(family_name(f)) + " fit requires strictly positive data");
    }
}

Distribution fit_gamma(const Sample& s) {
    check_positive_sample(s, Family::gamma);
    const double m = s.mean();
    const double c = std::log(m) - mean_log(s);  // > 0 unless degenerate
    if (!(c > 0.0)) fail("degenerate-sample", "gamma fit needs dispersed data");
    // ln(a) - psi(a) = c; standard starting value, then Newton.
    const double a0 = (3.0 - c + std::sqrt((c - 3.0) * (c - 3.0) + 24.0 * c)) / (12.0 * c);
    double lo = a0, hi = a0;
    auto g = [&](double a) { return std::log(a) - digamma(a) - c; };
    // ln(a) - psi(a) decreases from +inf to 0, so g runs from +inf to -c.
    for (int i = 0; i < 200 && g(lo) < 0.0; ++i) lo *= 0.5;
    for (int i = 0; i < 200 && g(hi) > 0.0; ++i) hi *= 2.0;
    const double eps = 1e-8;
    const double a = newton_safeguarded(
        g, [&](double t) { return (g(t + eps * t) - g(t - eps * t)) / (2.0 * eps * t); },
        std::min(lo, hi), std::max(lo, hi), a0, 1e-10, kFitIterationCap);
    return Distribution::gamma(a, a / m);
}

Distribution fit_weibull(const Sample& s) {
    check_positive_sample(s, Family::weibull);
    const double mlog = mean_log(s);
    const double n = static_cast<double>(s.size());

    auto profile = [&](double k) {
        // sum x^k log x / sum x^k - 1/k - mean(log x); rescale x by max to
        // keep x^k in range for large shapes.
        const double scale = s.values.back();
        double num = 0.0, den = 0.0;
        for (double x : s.values) {
            const double w = std::pow(x / scale, k);
            num += w * std::log(x);
            den += w;
        }
        return num / den - 1.0 / k - mlog;
    };
    // Moment-style start: pi / (sd(log x) * sqrt(6)).
    double sl = 0.0;
    for (double x : s.values) {
        const double d = std::log(x) - mlog;
        sl += d * d;
    }
    sl = std::sqrt(sl / (n - 1.0));
    if (!(sl > 0.0)) fail("degenerate-sample", "weibull fit needs dispersed data");
    const double k0 = M_PI / (sl * std::sqrt(6.0));
    double lo = k0, hi = k0;
    for (int i = 0; i < 200 && profile(lo) > 0.0; ++i) lo *= 0.5;
    for (int i = 0; i < 200 && profile(hi) < 0.0; ++i) hi *= 2.0;
    const double eps = 1e-7;
    const double k = newton_safeguarded(
        profile,
        [&](double t) { return (profile(t + eps * t) - profile(t - eps * t)) / (2.0 * eps * t); },
        std::min(lo, hi), std::max(lo, hi), k0, 1e-10, kFitIterationCap);

    double acc = 0.0;
    const double scale = s.values.back();
    for (double x : s.values) acc += std::pow(x / scale, k);
    const double theta = scale * std::pow(acc / n, 1.0 / k);  // scale parameter
    return Distribution::weibull(k, 1.0 / theta);
}

}  // namespace

Distribution fit_mle(Family family, const Sample& s) {
    if (s.size() < 2) fail("domain-error", "fit_mle requires at least two observations");
    if (s.values.front() == s.values.back()) fail("degenerate-sample", "all observations are equal");

    switch (family) {
        case Family::exponential:
            check_positive_sample(s, family);
            return Distribution::exponential(1.0 / s.mean());
        case Family::lognormal: {
            check_positive_sample(s, family);
            const double mu = mean_log(s);
            double acc = 0.0;
            for (double x : s.values) {
                const double d = std::log(x) - mu;
                acc += d * d;
            }
            // MLE sigma uses the n divisor.
            return Distribution::lognormal(mu, std::sqrt(acc / static_cast<double>(s.size())));
        }
        case Family::uniform:
            return Distribution::uniform(s.min(), s.max());
        case Family::power: {
            check_positive_sample(s, family);
            if (s.max() >= 1.0) fail("domain-error", "power fit requires data in (0,1)");
            return Distribution::power(-1.0 / mean_log(s));
        }
        case Family::gamma: return fit_gamma(s);
        case Family::weibull: return fit_weibull(s);
    }
    fail("invalid-parameters", "unknown family");
}

double log_likelihood(const Distribution& d, const Sample& s) {
    double acc = 0.0;
    for (double x : s.values) acc += d.log_density(x);
    return acc;
}

}  // namespace varj
