#include "varj/quadrature.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "varj/error.hpp"

namespace varj {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

using Fn = std::function<double(double)>;

double eval_checked(const Fn& h, double x, long& evals) {
    const double v = h(x);
    ++evals;
    if (!std::isfinite(v)) {
        fail("non-finite-integrand",
             "integrand returned " + std::to_string(v) + " at x = " + std::to_string(x));
    }
    return v;
}

struct PanelEstimate {
    double value;
    double err;
};

PanelEstimate kronrod15(const Fn& h, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);

    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = eval_checked(h, c - hw * kXgk[j], evals);
        fv[14 - j] = eval_checked(h, c + hw * kXgk[j], evals);
    }
    fv[7] = eval_checked(h, c, evals);

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    double resabs = kWgk[7] * std::fabs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const double sum = fv[j] + fv[14 - j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));
    }

    double err = std::fabs((resk - resg) * hw);
    resasc *= hw;
    resabs *= hw;
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    return {resk * hw, err};
}

struct Panel {
    double a, b;
    double value, err;
    long seq;
    bool splittable;
};

struct WorstFirst {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.err != q.err) return p.err > q.err;
        return p.seq < q.seq;
    }
};

IntegralResult adaptive(const Fn& h, double a, double b, double tol) {
    IntegralResult out;
    long evals = 0;
    long seq = 0;

    std::multiset<Panel, WorstFirst> panels;
    auto push = [&](double lo, double hi) {
        const PanelEstimate e = kronrod15(h, lo, hi, evals);
        const double mid = 0.5 * (lo + hi);
        panels.insert({lo, hi, e.value, e.err, seq++, lo < mid && mid < hi});
    };
    push(a, b);

    double total_err = panels.begin()->err;
    while (total_err > tol && static_cast<int>(panels.size()) < kMaxPanels) {
        auto it = panels.begin();
        while (it != panels.end() && !it->splittable) ++it;
        if (it == panels.end()) break;  // nothing left to refine

        const Panel worst = *it;
        panels.erase(it);
        const double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid);
        push(mid, worst.b);

        total_err = 0.0;
        for (const Panel& p : panels) total_err += p.err;
    }

    double value = 0.0, err = 0.0;
    for (const Panel& p : panels) {
        value += p.value;
        err += p.err;
    }
    out.value = value;
    out.abs_error = err;
    out.evaluations = evals;
    out.converged = err <= tol;
    return out;
}

}  // namespace

IntegralResult integrate(const Fn& h, double lo, double hi, double tol) {
    if (!(tol > 0.0)) fail("domain-error", "integrate requires tol > 0");
    if (!(lo < hi)) fail("domain-error", "integrate requires lo < hi");

    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);

    if (!lo_inf && !hi_inf) {
        return adaptive(h, lo, hi, tol);
    }
    if (lo_inf && hi_inf) {
        IntegralResult left = integrate(h, lo, 0.0, tol / 2.0);
        IntegralResult right = integrate(h, 0.0, hi, tol / 2.0);
        return {left.value + right.value, left.abs_error + right.abs_error,
                left.evaluations + right.evaluations, left.converged && right.converged};
    }
    if (!lo_inf) {
        // x = lo + t/(1-t), dx = dt/(1-t)^2, t in (0,1)
        auto g = [&h, lo](double t) {
            const double om = 1.0 - t;
            return h(lo + t / om) / (om * om);
        };
        return adaptive(g, 0.0, 1.0, tol);
    }
    // x = hi - t/(1-t), mirrored
    auto g = [&h, hi](double t) {
        const double om = 1.0 - t;
        return h(hi - t / om) / (om * om);
    };
    return adaptive(g, 0.0, 1.0, tol);
}

double grid_integrate(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) fail("length-mismatch", "grid_integrate: xs and ys differ in length");
    if (xs.size() < 2) fail("length-mismatch", "grid_integrate needs at least two points");
    double acc = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) fail("domain-error", "grid_integrate: xs must be strictly increasing");
        acc += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
    }
    return acc;
}

}  // namespace varj
