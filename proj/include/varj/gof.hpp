#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varj/distributions.hpp"
#include "varj/estimation.hpp"

namespace varj {

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;        // limiting Kolmogorov series (the convention
                                 // the embedded reference analyses use)
    double p_value_exact = 0.0;  // finite-n distribution, Marsaglia-Tsang-Wang
};

// Two-sided one-sample Kolmogorov-Smirnov test of s against d. Parameter
// estimation from the same data is not corrected for.
KsResult ks_test(const Sample& s, const Distribution& d);

// P(D_n < d) for the one-sample statistic, by the Marsaglia-Tsang-Wang
// matrix method (exact up to roundoff).
double ks_exact_cdf(int n, double d);

// Limiting distribution P(sqrt(n) D_n <= x) as n -> infinity.
double ks_asymptotic_cdf(double x);

// A^2 = -n - (1/n) sum (2i-1)[ln F(x_(i)) + ln(1 - F(x_(n+1-i)))], with F
// clamped to [1e-300, 1 - 1e-16].
double ad_statistic(const Sample& s, const Distribution& d);

// P(A^2_n >= a2) under the fully specified null (Marsaglia & Marsaglia 2004
// CDF with their finite-n correction). Anti-conservative when parameters
// were estimated from the data, which matches the reference analyses.
double ad_p_value(double a2, int n);

struct InfoCriteria {
    double aic = 0.0;
    double caic = 0.0;  // small-sample corrected AIC
    double bic = 0.0;
    double hqic = 0.0;
};

// ell = log-likelihood of d on s, k = parameter count; requires n > k + 1.
InfoCriteria info_criteria(const Distribution& d, const Sample& s, int k);

enum class Preferred { y1, y2, undefined };

const char* preferred_name(Preferred p);

struct PreferenceDecision {
    Preferred preferred = Preferred::undefined;
    double residual = 0.0;       // j2 - (2 - sqrt(v2/v1)) j1
    bool rule_applies = true;    // false in the negative-divergence regime,
                                 // where Y1 stands by default
};

// Variance-normalized preference between two candidates ordered so that
// j1 <= j2 (Y1 is the closer fit): prefer Y2 iff the residual is negative.
// The threshold normalization behind the rule assumes j1 >= 0; for j1 < 0
// the decision is reported as undefined (with Y1 as the default).
PreferenceDecision preference_criterion(double j1, double j2, double v1, double v2);

// A model-comparison candidate: a family fitted by MLE, or the same with
// fixed parameters supplied up front.
struct Candidate {
    Family family;
    std::optional<std::vector<double>> fixed_params;
    std::string label;  // optional display label
};

struct CandidateResult {
    Family family = Family::exponential;
    std::string label;
    bool fitted = false;                 // false when params were supplied
    std::vector<double> params;
    double log_likelihood = 0.0;
    KsResult ks;
    double ad = 0.0;
    double ad_p = 0.0;
    InfoCriteria ic;
    std::vector<MeasureReport> measures;  // empirical measures vs the KDE
    std::string error;                    // nonempty if this candidate failed
    bool ok() const { return error.empty(); }
};

struct CriterionOutcome {
    std::string rule;       // "J" or "K"
    int first = -1;         // candidate index playing Y1 (smaller divergence)
    int second = -1;        // candidate index playing Y2
    PreferenceDecision decision;
    int preferred = -1;     // resolved candidate index (Y1 default when undefined)
};

struct ComparisonReport {
    std::size_t sample_n = 0;
    double bandwidth = 0.0;
    int gridpoints = 0;
    std::vector<CandidateResult> candidates;
    std::vector<CriterionOutcome> decisions;  // J-based and K-based
};

struct CompareOptions {
    std::optional<double> bandwidth;
    int gridpoints = 512;
    double cut = 3.0;
    double tol = kDefaultTol;
    LogRatioPolicy log_ratio;
};

// Fits every candidate, builds the KDE once, computes the test statistics,
// information criteria and empirical measures, then applies the preference
// criterion on (J, VarJ) and on (K, VarK) over the two best-by-J candidates.
// A failing candidate is reported in place, not fatal.
ComparisonReport compare_models(const Sample& s, const std::vector<Candidate>& candidates,
                                const CompareOptions& options = {});

}  // namespace varj
