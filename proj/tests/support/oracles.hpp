#pragma once

// Test-side oracles, kept independent of the library's quadrature path:
// closed-form Gamma integrals for exponential pairs, Monte Carlo plug-in
// estimators with standard errors, and transformed densities for the
// invariance checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "varj/distributions.hpp"

namespace varj::test {

// For f = Exp(lam), g = Exp(eta) on (0, inf), every integral below is a
// Gamma integral: int x^k e^{-c x} dx = k!/c^{k+1}.
struct ExpPair {
    double lam;
    double eta;

    double int_f2() const { return lam / 2.0; }
    double int_fg() const { return lam * eta / (lam + eta); }
    double int_f3() const { return lam * lam / 3.0; }
    double int_f2g() const { return lam * lam * eta / (2.0 * lam + eta); }
    double int_g2f() const { return eta * eta * lam / (2.0 * eta + lam); }

    double extropy() const { return -lam / 4.0; }
    double varextropy() const { return lam * lam / 48.0; }
    double inaccuracy() const { return -0.5 * int_fg(); }
    double discrimination() const { return 0.5 * (int_f2() - int_fg()); }
    double varj_inaccuracy() const {
        const double s = lam + eta;
        return lam * std::pow(eta, 4) / (4.0 * (lam + 2.0 * eta) * s * s);
    }
    double varj_divergence() const {
        const double second = 0.25 * (int_f3() - 2.0 * int_f2g() + int_g2f());
        const double mean = discrimination();
        return second - mean * mean;
    }
    double kl() const { return std::log(lam / eta) + eta / lam - 1.0; }
    double var_kl() const { return (eta - lam) * (eta - lam) / (lam * lam); }

    double weighted_extropy() const { return -1.0 / 8.0; }  // -lam^2/(2 (2 lam)^2)
    double weighted_inaccuracy() const {
        const double s = lam + eta;
        return -0.5 * lam * eta / (s * s);
    }
    double weighted_varj_inaccuracy() const {
        const double s = lam + eta;
        const double num = eta * eta * lam *
                           (2.0 * std::pow(eta, 4) + 2.0 * eta * std::pow(lam, 3) + std::pow(lam, 4));
        return 0.25 * num / (std::pow(s, 4) * std::pow(2.0 * eta + lam, 3));
    }
};

inline double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline std::vector<double> draw(const Distribution& d, long n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (double& x : xs) x = d.quantile(uniform01(rng));
    return xs;
}

// Plug-in estimate of E[h(X)] and Var[h(X)] from draws, with standard
// errors (SE of the sample variance via the fourth central moment).
struct McStat {
    double mean = 0.0;
    double mean_se = 0.0;
    double var = 0.0;
    double var_se = 0.0;
};

template <typename H>
McStat mc_moments(const std::vector<double>& xs, H h) {
    const double n = static_cast<double>(xs.size());
    McStat s;
    for (double x : xs) s.mean += h(x);
    s.mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double c = h(x) - s.mean;
        m2 += c * c;
        m4 += c * c * c * c;
    }
    m2 /= n;
    m4 /= n;
    s.var = m2;
    s.mean_se = std::sqrt(m2 / n);
    s.var_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    return s;
}

// Density of a X + b for a > 0 when X ~ base.
class AffineDensity final : public Density {
public:
    AffineDensity(const Distribution& base, double a, double b) : base_(base), a_(a), b_(b) {}

    double density(double y) const override { return base_.density((y - b_) / a_) / a_; }
    Interval support() const override {
        const Interval s = base_.support();
        return {a_ * s.lo + b_, a_ * s.hi + b_};
    }
    IntegralResult expect(const std::function<double(double)>& h, double tol) const override {
        return base_.expect([this, &h](double x) { return h(a_ * x + b_); }, tol);
    }

private:
    Distribution base_;
    double a_, b_;
};

// Density of X^2 for X ~ base on (0, inf).
class SquareTransformDensity final : public Density {
public:
    explicit SquareTransformDensity(const Distribution& base) : base_(base) {}

    double density(double y) const override {
        if (y <= 0.0) return 0.0;
        const double r = std::sqrt(y);
        return base_.density(r) / (2.0 * r);
    }
    Interval support() const override { return base_.support(); }
    IntegralResult expect(const std::function<double(double)>& h, double tol) const override {
        return base_.expect([&h](double x) { return h(x * x); }, tol);
    }

private:
    Distribution base_;
};

// Forwarding wrapper that hides the concrete Distribution type, so code
// paths specialized on Distribution fall back to their generic branch.
class OpaqueDensity final : public Density {
public:
    explicit OpaqueDensity(const Distribution& base) : base_(base) {}
    double density(double x) const override { return base_.density(x); }
    Interval support() const override { return base_.support(); }
    IntegralResult expect(const std::function<double(double)>& h, double tol) const override {
        return base_.expect(h, tol);
    }

private:
    Distribution base_;
};

}  // namespace varj::test
