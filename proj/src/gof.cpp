#include "varj/gof.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "varj/error.hpp"

namespace varj {

namespace {

// ---- Marsaglia-Tsang-Wang exact Kolmogorov distribution ------------------

void mat_multiply(const std::vector<double>& a, const std::vector<double>& b,
                  std::vector<double>& c, int m) {
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int g = 0; g < m; ++g) s += a[i * m + g] * b[g * m + j];
            c[i * m + j] = s;
        }
    }
}

void mat_power(const std::vector<double>& a, int ea, std::vector<double>& v, int& ev, int m,
               int n) {
    if (n == 1) {
        v = a;
        ev = ea;
        return;
    }
    mat_power(a, ea, v, ev, m, n / 2);
    std::vector<double> b(m * m);
    mat_multiply(v, v, b, m);
    int eb = 2 * ev;
    if (n % 2 == 0) {
        v = b;
        ev = eb;
    } else {
        mat_multiply(a, b, v, m);
        ev = ea + eb;
    }
    if (v[(m / 2) * m + (m / 2)] > 1e140) {
        for (double& x : v) x *= 1e-140;
        ev += 140;
    }
}

}  // namespace

double ks_exact_cdf(int n, double d) {
    if (n < 1) fail("domain-error", "ks_exact_cdf requires n >= 1");
    if (d <= 1.0 / (2.0 * n)) return 0.0;
    if (d >= 1.0) return 1.0;

    const int k = static_cast<int>(n * d) + 1;
    const int m = 2 * k - 1;
    const double h = k - n * d;

    std::vector<double> H(m * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) H[i * m + j] = (i - j + 1 < 0) ? 0.0 : 1.0;
    }
    for (int i = 0; i < m; ++i) {
        H[i * m] -= std::pow(h, i + 1);
        H[(m - 1) * m + i] -= std::pow(h, m - i);
    }
    H[(m - 1) * m] += (2.0 * h - 1.0 > 0.0 ? std::pow(2.0 * h - 1.0, m) : 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i - j + 1 > 0) {
                for (int g = 1; g <= i - j + 1; ++g) H[i * m + j] /= g;
            }
        }
    }

    std::vector<double> Q(m * m);
    int eQ = 0;
    mat_power(H, 0, Q, eQ, m, n);
    double s = Q[(k - 1) * m + (k - 1)];
    for (int i = 1; i <= n; ++i) {
        s = s * i / n;
        if (s < 1e-140) {
            s *= 1e140;
            eQ -= 140;
        }
    }
    return s * std::pow(10.0, eQ);
}

double ks_asymptotic_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1.0) {
        // Theta-function form converges fast for small arguments.
        const double c = M_PI * M_PI / (8.0 * x * x);
        double s = 0.0;
        for (int k = 1; k <= 20; k += 2) {
            s += std::exp(-c * k * k);
        }
        return std::sqrt(2.0 * M_PI) / x * s;
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        s += (k % 2 == 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return 1.0 - 2.0 * s;
}

KsResult ks_test(const Sample& s, const Distribution& d) {
    const std::size_t n = s.size();
    if (n < 1) fail("empty-dataset", "ks_test needs data");
    double dn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double F = d.cumulative(s.values[i]);
        const double up = static_cast<double>(i + 1) / n - F;
        const double dn_i = F - static_cast<double>(i) / n;
        dn = std::max(dn, std::max(up, dn_i));
    }
    KsResult out;
    out.statistic = dn;
    out.p_value = 1.0 - ks_asymptotic_cdf(std::sqrt(static_cast<double>(n)) * dn);
    out.p_value_exact = 1.0 - ks_exact_cdf(static_cast<int>(n), dn);
    return out;
}

double ad_statistic(const Sample& s, const Distribution& d) {
    const std::size_t n = s.size();
    if (n < 1) fail("empty-dataset", "ad_statistic needs data");
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double F = d.cumulative(s.values[i]);
        if (std::isnan(F)) fail("boundary-probability", "cumulative returned NaN");
        z[i] = std::clamp(F, 1e-300, 1.0 - 1e-16);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += (2.0 * (i + 1) - 1.0) * (std::log(z[i]) + std::log1p(-z[n - 1 - i]));
    }
    return -static_cast<double>(n) - acc / static_cast<double>(n);
}

namespace {

// Asymptotic CDF of A^2 (Marsaglia & Marsaglia 2004).
double ad_inf(double z) {
    if (z < 2.0) {
        return std::exp(-1.2337141 / z) / std::sqrt(z) *
               (2.00012 + (0.247105 - (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) * z);
    }
    return std::exp(
        -std::exp(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) * z));
}

// Finite-n correction from the same paper.
double ad_cdf_fix(int n, double x) {
    if (x > 0.8) {
        const double v =
            (-130.2137 + (745.2337 - (1705.091 - (1950.646 - (1116.360 - 255.7844 * x) * x) * x) * x) * x) / n;
        return x + v;
    }
    const double c = 0.01265 + 0.1757 / n;
    if (x < c) {
        double v = x / c;
        v = std::sqrt(v) * (1.0 - v) * (49.0 * v - 102.0);
        return x + v * (0.0037 / (static_cast<double>(n) * n) + 0.00078 / n + 0.00006) / n;
    }
    double v = (x - c) / (0.8 - c);
    v = -0.00022633 + (6.54034 - (14.6538 - (14.458 - (8.259 - 1.91864 * v) * v) * v) * v) * v;
    return x + v * (0.04213 + 0.01365 / n) / n;
}

}  // namespace

double ad_p_value(double a2, int n) {
    if (n < 1) fail("domain-error", "ad_p_value requires n >= 1");
    if (!(a2 > 0.0)) return 1.0;
    const double cdf = std::clamp(ad_cdf_fix(n, ad_inf(a2)), 0.0, 1.0);
    return 1.0 - cdf;
}

InfoCriteria info_criteria(const Distribution& d, const Sample& s, int k) {
    const double n = static_cast<double>(s.size());
    if (!(n > k + 1)) fail("domain-error", "info_criteria requires n > k + 1");
    const double ell = log_likelihood(d, s);
    InfoCriteria ic;
    ic.aic = -2.0 * ell + 2.0 * k;
    ic.caic = ic.aic + 2.0 * k * (k + 1.0) / (n - k - 1.0);
    ic.bic = -2.0 * ell + k * std::log(n);
    ic.hqic = -2.0 * ell + 2.0 * k * std::log(std::log(n));
    return ic;
}

const char* preferred_name(Preferred p) {
    switch (p) {
        case Preferred::y1: return "Y1";
        case Preferred::y2: return "Y2";
        case Preferred::undefined: return "undefined";
    }
    return "?";
}

PreferenceDecision preference_criterion(double j1, double j2, double v1, double v2) {
    if (!(v1 > 0.0) || !(v2 > 0.0)) fail("domain-error", "variances must be positive");
    if (j1 > j2) fail("domain-error", "candidates must be ordered so that j1 <= j2");
    PreferenceDecision out;
    out.residual = j2 - (2.0 - std::sqrt(v2 / v1)) * j1;
    if (j1 < 0.0) {
        // The r = 2 J(X|Y1) threshold normalization assumes a non-negative
        // divergence; outside that regime the rule is reported as undefined
        // and Y1 stands by default.
        out.preferred = Preferred::undefined;
        out.rule_applies = false;
        return out;
    }
    out.preferred = out.residual < 0.0 ? Preferred::y2 : Preferred::y1;
    return out;
}

namespace {

double find_measure(const std::vector<MeasureReport>& ms, const char* name) {
    for (const MeasureReport& m : ms) {
        if (m.name == name) return m.value;
    }
    fail("domain-error", std::string("measure not found: ") + name);
}

CriterionOutcome run_criterion(const ComparisonReport& report, const char* rule, int ia, int ib,
                               const char* jname, const char* vname) {
    const auto& ca = report.candidates[ia];
    const auto& cb = report.candidates[ib];
    double j1 = find_measure(ca.measures, jname);
    double j2 = find_measure(cb.measures, jname);
    int first = ia, second = ib;
    if (j2 < j1) {
        std::swap(j1, j2);
        std::swap(first, second);
    }
    const double v1 = find_measure(report.candidates[first].measures, vname);
    const double v2 = find_measure(report.candidates[second].measures, vname);

    CriterionOutcome out;
    out.rule = rule;
    out.first = first;
    out.second = second;
    out.decision = preference_criterion(j1, j2, v1, v2);
    switch (out.decision.preferred) {
        case Preferred::y2: out.preferred = second; break;
        default: out.preferred = first; break;  // Y1, and Y1-by-default when undefined
    }
    return out;
}

}  // namespace

ComparisonReport compare_models(const Sample& s, const std::vector<Candidate>& candidates,
                                const CompareOptions& options) {
    if (candidates.size() < 2) fail("usage-error", "compare_models needs at least two candidates");

    ComparisonReport report;
    report.sample_n = s.size();
    const DensityEstimate est = kde(s, options.bandwidth, options.gridpoints, options.cut);
    report.bandwidth = est.bandwidth();
    report.gridpoints = options.gridpoints;

    for (const Candidate& cand : candidates) {
        CandidateResult r;
        r.family = cand.family;
        r.label = cand.label.empty() ? family_name(cand.family) : cand.label;
        try {
            const Distribution d = cand.fixed_params
                                       ? Distribution(cand.family, *cand.fixed_params)
                                       : fit_mle(cand.family, s);
            r.fitted = !cand.fixed_params.has_value();
            r.params = d.params();
            r.log_likelihood = log_likelihood(d, s);
            r.ks = ks_test(s, d);
            r.ad = ad_statistic(s, d);
            r.ad_p = ad_p_value(r.ad, static_cast<int>(s.size()));
            r.ic = info_criteria(d, s, family_param_count(cand.family));
            r.measures = empirical_measures(est, d, options.log_ratio);
        } catch (const Error& e) {
            r.error = e.what();
        }
        report.candidates.push_back(std::move(r));
    }

    // The preference rules compare the two candidates closest to the data
    // in the J sense.
    std::vector<int> ok;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        if (report.candidates[i].ok()) ok.push_back(static_cast<int>(i));
    }
    if (ok.size() >= 2) {
        std::sort(ok.begin(), ok.end(), [&](int a, int b) {
            return find_measure(report.candidates[a].measures, "J(X|Y)") <
                   find_measure(report.candidates[b].measures, "J(X|Y)");
        });
        report.decisions.push_back(
            run_criterion(report, "J", ok[0], ok[1], "J(X|Y)", "VarJ(X|Y)"));
        report.decisions.push_back(
            run_criterion(report, "K", ok[0], ok[1], "K(X,Y)", "VarK(X,Y)"));
    }
    return report;
}

}  // namespace varj
