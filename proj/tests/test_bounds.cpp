#include "doctest.h"

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "varj/bounds.hpp"
#include "varj/error.hpp"
#include "varj/estimation.hpp"
#include "varj/measures.hpp"

using namespace varj;

TEST_CASE("exponential series bound closed form") {
    const BoundResult b5 = series_bound_exponential(5.0, 4.0, 5);
    CHECK(b5.value == doctest::Approx(0.30380224770071895).epsilon(1e-12));
    CHECK(b5.kind == BoundKind::series);
    CHECK(b5.order_n == 5);
    CHECK(b5.terms.size() == 5);

    CHECK(series_bound_exponential(1.0, 1.0, 1).value == doctest::Approx(0.015625).epsilon(1e-14));

    // n -> infinity recovers the exact varjinaccuracy.
    CHECK(series_bound_exponential(5.0, 4.0, 2000).value ==
          doctest::Approx(0.30389363722697056).epsilon(1e-10));

    CHECK_THROWS_AS(series_bound_exponential(-1.0, 1.0, 3), Error);
    CHECK_THROWS_AS(series_bound_exponential(1.0, 1.0, 0), Error);
}

TEST_CASE("series bound is monotone in n and below the exact value") {
    std::mt19937_64 rng(1213u);
    for (int rep = 0; rep < 10; ++rep) {
        const double lam = 0.4 + 5.0 * varj::test::uniform01(rng);
        const double eta = 0.4 + 5.0 * varj::test::uniform01(rng);
        const double exact = varj_inaccuracy(Distribution::exponential(lam),
                                             Distribution::exponential(eta)).value;
        double prev = 0.0;
        const double ratio2 = std::pow(eta / (lam + eta), 2);
        for (int n = 1; n <= 6; ++n) {
            const BoundResult b = series_bound_exponential(lam, eta, n);
            CHECK(b.value >= prev - 1e-15);
            CHECK(b.value <= exact + 1e-8);
            for (double t : b.terms) CHECK(t >= 0.0);
            if (n > 1) {
                // Successive gaps to the exact value shrink by (eta/(lam+eta))^2.
                const double gap_prev = exact - prev;
                const double gap = exact - b.value;
                CHECK(gap == doctest::Approx(gap_prev * ratio2).epsilon(1e-6));
            }
            prev = b.value;
        }
    }
}

TEST_CASE("power series bound") {
    const BoundResult b = series_bound_power(1.0, 2.0, 1);
    CHECK(b.value == doctest::Approx(1.0 / 12.0).epsilon(1e-12));

    // Equality case: the bound meets the exact varjinaccuracy.
    const double exact = varj_inaccuracy(Distribution::uniform(0.0, 1.0),
                                         Distribution::power(2.0)).value;
    CHECK(std::fabs(b.value - exact) <= 1e-9);
    CHECK(std::fabs(exact - 1.0 / 12.0) <= 1e-9);

    // Constant candidate density: every derivative vanishes.
    const BoundResult z = series_bound_power(2.0, 1.0, 3);
    CHECK(z.value == 0.0);
    for (double t : z.terms) CHECK(t == 0.0);

    // Higher-order terms with integer b - k <= 0 drop out.
    const BoundResult c = series_bound_power(1.0, 2.0, 5);
    CHECK(c.terms[0] == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    for (std::size_t k = 1; k < c.terms.size(); ++k) CHECK(c.terms[k] == 0.0);

    CHECK_THROWS_AS(series_bound_power(0.0, 1.0, 1), Error);
    CHECK_THROWS_AS(series_bound_power(0.4, 0.5, 1), Error);
}

TEST_CASE("chebyshev bound on the exponential pair") {
    const Distribution dx = Distribution::exponential(5.0);
    const Distribution dy = Distribution::exponential(4.0);
    const BoundResult closed = chebyshev_bound(dx, dy, 0.02);
    CHECK(closed.kind == BoundKind::chebyshev);
    CHECK(closed.valid);
    CHECK(closed.epsilon == 0.02);
    // Direct evaluation sits near 3.914e-4; the reference analysis prints
    // 0.000408 from rounded intermediates.
    CHECK(std::fabs(closed.value - 0.000408) <= 2e-5);

    // The generic level-set path must agree with the closed form.
    const varj::test::OpaqueDensity ox(dx);
    const varj::test::OpaqueDensity oy(dy);
    const BoundResult generic = chebyshev_bound(ox, oy, 0.02);
    CHECK(std::fabs(generic.value - closed.value) <= 1e-10);

    // Both stay below the exact value.
    const double exact = varj_inaccuracy(dx, dy).value;
    CHECK(closed.value <= exact + 1e-8);
}

TEST_CASE("chebyshev bound accepts a gridded weighting density") {
    // f is a kernel estimate, g parametric: the level-set path must run on
    // the estimate's own grid and stay below the exact dispersion.
    std::mt19937_64 rng(4242u);
    std::vector<double> xs(4000);
    const Distribution truth = Distribution::exponential(2.0);
    for (double& x : xs) x = truth.quantile(varj::test::uniform01(rng));
    const DensityEstimate est = kde(Sample::from_values(std::move(xs)));
    const Distribution dy = Distribution::exponential(1.5);
    const double exact = varj_inaccuracy(est, dy).value;
    const BoundResult b = chebyshev_bound(est, dy, 0.05);
    CHECK(b.value >= 0.0);
    CHECK(b.value <= exact + 1e-8);
}

TEST_CASE("chebyshev bound saturates for large epsilon") {
    const Distribution d = Distribution::exponential(1.0);
    // eps beyond sup(g)/2 + |J| empties both tail sets.
    const BoundResult b = chebyshev_bound(d, d, 1.0);
    CHECK(b.value == 0.0);
    CHECK_FALSE(b.valid);
    CHECK_THROWS_AS(chebyshev_bound(d, d, 0.0), Error);
}

TEST_CASE("chebyshev bound vanishes at both epsilon extremes") {
    const Distribution dx = Distribution::exponential(5.0);
    const Distribution dy = Distribution::exponential(4.0);
    const double exact = varj_inaccuracy(dx, dy).value;
    CHECK(chebyshev_bound(dx, dy, 1e-6).value <= 1e-11);
    CHECK(chebyshev_bound(dx, dy, 1e3).value == 0.0);
    for (double eps : {0.01, 0.05, 0.2, 0.5}) {
        CHECK(chebyshev_bound(dx, dy, eps).value <= exact + 1e-8);
    }
}

TEST_CASE("generic series bound matches the exponential closed form") {
    const double lam = 5.0, eta = 4.0;
    const Distribution dx = Distribution::exponential(lam);
    const Distribution dy = Distribution::exponential(eta);
    const BoundResult numeric =
        series_bound_numeric(dx, dy, [lam](double x) { return x / lam; }, 0.0, 3);
    const BoundResult closed = series_bound_exponential(lam, eta, 3);
    CHECK(std::fabs(numeric.value - closed.value) <= 1e-7);
    CHECK(numeric.valid);
}

TEST_CASE("generic series bound matches the power closed form") {
    const double a = 1.0;
    const Distribution dx = Distribution::power(a);  // uniform on (0,1)
    const Distribution dy = Distribution::power(2.0);
    const BoundResult numeric = series_bound_numeric(
        dx, dy, [a](double x) { return x * (1.0 - x) / (a + 1.0); }, -1.0 / (a + 1.0), 1);
    CHECK(std::fabs(numeric.value - 1.0 / 12.0) <= 1e-7);
}

TEST_CASE("generic series bound is zero for a uniform candidate") {
    const Distribution dx = Distribution::power(2.0);
    const Distribution dy = Distribution::uniform(0.0, 1.0);
    const BoundResult b = series_bound_numeric(
        dx, dy, [](double x) { return x * (1.0 - x) / 3.0; }, -1.0 / 3.0, 2);
    CHECK(std::fabs(b.value) <= 1e-12);
}

TEST_CASE("excluded delta values are rejected") {
    const Distribution dx = Distribution::exponential(1.0);
    const Distribution dy = Distribution::exponential(2.0);
    CHECK_THROWS_WITH_AS(
        series_bound_numeric(dx, dy, [](double x) { return x; }, 0.5, 3),
        doctest::Contains("delta-excluded"), Error);
}
