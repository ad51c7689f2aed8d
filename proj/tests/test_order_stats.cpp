#include "doctest.h"

#include <cmath>

#include "support/oracles.hpp"
#include "varj/error.hpp"
#include "varj/order_stats.hpp"
#include "varj/quadrature.hpp"

using namespace varj;

namespace {

std::vector<Distribution> parents() {
    return {Distribution::exponential(1.0),  Distribution::gamma(2.5, 1.3),
            Distribution::weibull(1.7, 0.8), Distribution::lognormal(0.1, 0.5),
            Distribution::uniform(0.0, 1.0), Distribution::power(2.0)};
}

}  // namespace

TEST_CASE("order statistic density") {
    const Distribution e1 = Distribution::exponential(1.0);
    const OrderStatDensity trivial({e1, 1, 1});
    for (double x : {0.1, 0.7, 2.3}) {
        CHECK(trivial.density(x) == doctest::Approx(e1.density(x)).epsilon(1e-14));
    }

    const OrderStatDensity umin({Distribution::uniform(0.0, 1.0), 1, 2});
    for (double x : {0.1, 0.5, 0.9}) {
        CHECK(umin.density(x) == doctest::Approx(2.0 * (1.0 - x)).epsilon(1e-12));
    }

    const OrderStatDensity emax({e1, 2, 2});
    for (double x : {0.2, 1.0, 3.0}) {
        CHECK(emax.density(x) ==
              doctest::Approx(2.0 * std::exp(-x) * (1.0 - std::exp(-x))).epsilon(1e-12));
    }

    // Normalization across parents and ranks.
    for (const Distribution& p : parents()) {
        const Interval s = p.support();
        for (int n = 1; n <= 3; ++n) {
            for (int i = 1; i <= n; ++i) {
                const OrderStatDensity osd({p, i, n});
                const double total =
                    integrate([&osd](double x) { return osd.density(x); }, s.lo, s.hi, 1e-11).value;
                CHECK(std::fabs(total - 1.0) <= 1e-8);
            }
        }
    }
    CHECK_THROWS_AS(OrderStatDensity({Distribution::exponential(1.0), 3, 2}), Error);
}

TEST_CASE("beta expectations") {
    CHECK(beta_expectation(Distribution::uniform(0.0, 1.0), 2.7, 4.1, 1) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(beta_expectation(Distribution::exponential(1.0), 1.0, 1.0, 1) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(beta_expectation(Distribution::exponential(1.0), 1.0, 1.0, 2) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK_THROWS_AS(beta_expectation(Distribution::exponential(1.0), 0.0, 1.0, 1), Error);
    CHECK_THROWS_AS(beta_expectation(Distribution::exponential(1.0), 1.0, 1.0, 3), Error);
}

TEST_CASE("uniform-parent analytic cases") {
    const Distribution u = Distribution::uniform(0.0, 1.0);
    CHECK(varj_inaccuracy_order({u, 1, 2}).value == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
    CHECK(varj_divergence_order({u, 1, 2}).value == doctest::Approx(1.0 / 18.0).epsilon(1e-10));
}

TEST_CASE("rank one of one reduces to the parent") {
    for (const Distribution& p : parents()) {
        CHECK(std::fabs(varj_inaccuracy_order({p, 1, 1}).value - varextropy(p).value) <= 1e-9);
        CHECK(std::fabs(varj_divergence_order({p, 1, 1}).value) <= 1e-10);
    }
}

TEST_CASE("beta identities equal the direct quadrature forms for n <= 5") {
    for (const Distribution& p : parents()) {
        for (int n = 1; n <= 5; ++n) {
            for (int i = 1; i <= n; ++i) {
                const OrderStatSpec spec{p, i, n};
                const OrderStatDensity osd(spec);

                // Var under the parent of -f_{i:n}/2.
                const double direct_inacc =
                    variance_under(p, [&osd](double x) { return -0.5 * osd.density(x); }).value;
                const double via_beta = varj_inaccuracy_order(spec).value;
                CHECK(std::fabs(via_beta - direct_inacc) <= 1e-8);
                CHECK(via_beta >= -1e-12);

                // Var under f_{i:n} of (f_{i:n} - f)/2.
                const double direct_diverg = varj_divergence(osd, p).value;
                const double via_beta3 = varj_divergence_order(spec).value;
                CHECK(std::fabs(via_beta3 - direct_diverg) <= 1e-8);
                CHECK(via_beta3 >= -1e-12);
            }
        }
    }
}

TEST_CASE("log-gamma normalization stays finite at large n") {
    const OrderStatSpec spec{Distribution::exponential(1.0), 25, 50};
    const double v = varj_inaccuracy_order(spec).value;
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    const double w = varj_divergence_order(spec).value;
    CHECK(std::isfinite(w));
    CHECK(w >= 0.0);
}

TEST_CASE("reflection symmetry for a uniform parent") {
    const Distribution u = Distribution::uniform(0.0, 1.0);
    for (int n = 2; n <= 5; ++n) {
        for (int i = 1; i <= n; ++i) {
            CHECK(varj_inaccuracy_order({u, i, n}).value ==
                  doctest::Approx(varj_inaccuracy_order({u, n + 1 - i, n}).value).epsilon(1e-9));
            CHECK(varj_divergence_order({u, i, n}).value ==
                  doctest::Approx(varj_divergence_order({u, n + 1 - i, n}).value).epsilon(1e-9));
        }
    }
}
