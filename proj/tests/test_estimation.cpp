#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "support/oracles.hpp"
#include "varj/error.hpp"
#include "varj/estimation.hpp"
#include "varj/fixtures.hpp"

using namespace varj;

namespace {

double measure(const std::vector<MeasureReport>& ms, const char* name) {
    for (const MeasureReport& m : ms) {
        if (m.name == name) return m.value;
    }
    FAIL("missing measure ", name);
    return 0.0;
}

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("rule-of-thumb bandwidth") {
    const Sample s = Sample::from_values({1.0, 2.0, 3.0, 4.0, 5.0});
    // 0.9 min(sqrt(2.5), 2/1.349) 5^{-1/5}
    CHECK(silverman_bandwidth(s) == doctest::Approx(0.96708924730900812).epsilon(1e-12));

    std::vector<double> scaled;
    for (double v : s.values) scaled.push_back(10.0 * v);
    CHECK(silverman_bandwidth(Sample::from_values(std::move(scaled))) ==
          doctest::Approx(10.0 * silverman_bandwidth(s)).epsilon(1e-12));

    // Independent re-evaluation of the formula on the locomotive data.
    const Sample loco = fixture_sample("locomotive");
    const double n = static_cast<double>(loco.size());
    double mean = 0.0;
    for (double v : loco.values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : loco.values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    auto q = [&](double p) {
        const double pos = (n - 1.0) * p;
        const std::size_t lo = static_cast<std::size_t>(pos);
        return loco.values[lo] + (pos - lo) * (loco.values[lo + 1] - loco.values[lo]);
    };
    const double reference = 0.9 * std::min(sd, (q(0.75) - q(0.25)) / 1.349) * std::pow(n, -0.2);
    CHECK(std::fabs(silverman_bandwidth(loco) - reference) <= 1e-6);

    CHECK_THROWS_WITH_AS(silverman_bandwidth(Sample::from_values({2.0, 2.0, 2.0})),
                         doctest::Contains("degenerate-sample"), Error);
}

TEST_CASE("kernel estimate basics") {
    const Sample sym = Sample::from_values({-2.0, -1.0, -0.5, 0.5, 1.0, 2.0});
    const DensityEstimate est = kde(sym);
    const auto& g = est.grid();
    const auto& v = est.values();
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::fabs(v[i] - v[g.size() - 1 - i]) < 1e-12);
    }
    CHECK(std::fabs(grid_integrate(est.grid(), est.values()) - 1.0) <= 1e-3);
    CHECK(est.sample_n() == 6);
    CHECK(est.grid().size() == 512);

    const DensityEstimate bear = kde(fixture_sample("bearings"));
    const auto it = std::max_element(bear.values().begin(), bear.values().end());
    const double mode = bear.grid()[static_cast<std::size_t>(it - bear.values().begin())];
    CHECK(mode > 50.0);
    CHECK(mode < 75.0);
}

TEST_CASE("truncate-and-renormalize flag") {
    const Sample loco = fixture_sample("locomotive");
    const DensityEstimate plain = kde(loco);
    CHECK(plain.grid().front() < 0.0);  // the default grid reaches below the data
    const DensityEstimate trunc = kde(loco, std::nullopt, 512, 3.0, /*truncate_at_zero=*/true);
    CHECK(trunc.grid().front() == 0.0);
    CHECK(std::fabs(grid_integrate(trunc.grid(), trunc.values()) - 1.0) <= 1e-9);
}

TEST_CASE("locomotive empirical measures land in the reference windows") {
    const Sample loco = fixture_sample("locomotive");
    const DensityEstimate est = kde(loco);
    const Distribution y1 = Distribution::lognormal(4.422567, 0.4031749);
    const Distribution y2 = Distribution::lognormal(4.427955, 0.4516975);
    const auto m1 = empirical_measures(est, y1);
    const auto m2 = empirical_measures(est, y2);

    CHECK(rel_err(measure(m1, "J(X|Y)"), 0.0001684737) <= 0.25);
    CHECK(rel_err(measure(m2, "J(X|Y)"), 0.0003892534) <= 0.25);
    CHECK(rel_err(measure(m1, "K(X,Y)"), 0.12333932) <= 0.25);
    CHECK(rel_err(measure(m1, "VarK(X,Y)"), 0.2358482) <= 0.25);
    CHECK(measure(m1, "J(X|Y)") < measure(m2, "J(X|Y)"));
    CHECK(measure(m1, "K(X,Y)") < measure(m2, "K(X,Y)"));

    // Only loosely pinned: the reference prints the same dispersion for both
    // candidates, which cannot be exact.
    CHECK(rel_err(measure(m1, "VarJ(X|Y)"), 1.756753e-06) <= 0.5);

    const std::vector<std::string> names = {"J(X|Y)", "VarJ(X|Y)", "K(X,Y)",
                                            "VarK(X,Y)", "J(X,Y)", "VarJ(X,Y)"};
    CHECK(m1.size() == names.size());
    for (std::size_t i = 0; i < names.size(); ++i) CHECK(m1[i].name == names[i]);
}

TEST_CASE("orderings are stable across bandwidths") {
    const Sample loco = fixture_sample("locomotive");
    const double h0 = silverman_bandwidth(loco);
    const Distribution y1 = Distribution::lognormal(4.422567, 0.4031749);
    const Distribution y2 = Distribution::lognormal(4.427955, 0.4516975);
    for (double f : {0.8, 0.9, 1.0, 1.1, 1.2}) {
        const DensityEstimate est = kde(loco, f * h0);
        const auto m1 = empirical_measures(est, y1);
        const auto m2 = empirical_measures(est, y2);
        CHECK(measure(m1, "J(X|Y)") < measure(m2, "J(X|Y)"));
        CHECK(measure(m1, "K(X,Y)") < measure(m2, "K(X,Y)"));
        // The dispersion ordering runs the other way at every bandwidth.
        CHECK(measure(m1, "VarJ(X|Y)") > measure(m2, "VarJ(X|Y)"));
    }
}

TEST_CASE("estimate against the true law is close for large samples") {
    // The kernel boundary bias at 0 keeps these near 1e-2 at this sample
    // size even with the boundary-corrected grid; they shrink with n (next
    // test) but do not reach the 1e-3 scale at n = 1e5.
    const Distribution truth = Distribution::exponential(2.0);
    const std::vector<double> xs = varj::test::draw(truth, 100000, 321u);
    const DensityEstimate est =
        kde(Sample::from_values(xs), std::nullopt, 512, 3.0, /*truncate_at_zero=*/true);
    for (const MeasureReport& m : empirical_measures(est, truth)) {
        if (m.name == "J(X|Y)" || m.name == "VarJ(X|Y)" || m.name == "K(X,Y)" ||
            m.name == "VarK(X,Y)") {
            CHECK(std::fabs(m.value) < 1.5e-2);
        }
    }
}

TEST_CASE("divergence from the truth shrinks with the sample size") {
    const Distribution truth = Distribution::exponential(2.0);
    std::vector<double> med_j, med_k;
    for (long n : {1000L, 10000L, 100000L}) {
        std::vector<double> js, ks;
        for (int seed = 0; seed < 20; ++seed) {
            const std::vector<double> xs = varj::test::draw(truth, n, 9000u + seed);
            const DensityEstimate est =
                kde(Sample::from_values(xs), std::nullopt, 256, 3.0, /*truncate_at_zero=*/true);
            const auto ms = empirical_measures(est, truth);
            js.push_back(std::fabs(measure(ms, "J(X|Y)")));
            ks.push_back(std::fabs(measure(ms, "K(X,Y)")));
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return 0.5 * (v[v.size() / 2] + v[(v.size() - 1) / 2]);
        };
        med_j.push_back(median(js));
        med_k.push_back(median(ks));
    }
    CHECK(med_j[0] > med_j[1]);
    CHECK(med_j[1] > med_j[2]);
    CHECK(med_k[0] > med_k[1]);
    CHECK(med_k[1] > med_k[2]);
}

TEST_CASE("all-mass-excluded") {
    const Sample s = Sample::from_values({10.0, 11.0, 12.0, 13.0, 15.0});
    const DensityEstimate est = kde(s);
    // The candidate lives on (0,1), far from the grid.
    CHECK_THROWS_WITH_AS(empirical_measures(est, Distribution::power(2.0)),
                         doctest::Contains("all-mass-excluded"), Error);
}
