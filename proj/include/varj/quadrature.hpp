#pragma once

#include <functional>
#include <span>

namespace varj {

inline constexpr double kDefaultTol = 1e-10;     // absolute
inline constexpr int kMaxPanels = 1 << 15;

struct IntegralResult {
    double value = 0.0;
    double abs_error = 0.0;   // estimated absolute error
    long evaluations = 0;     // integrand calls
    bool converged = true;    // false when the panel budget ran out first
};

// Adaptive Gauss-Kronrod (G7, K15) on (lo, hi); either endpoint may be
// infinite. Infinite ends are mapped by x = lo + t/(1-t) (mirrored for a
// -inf lower end; a doubly infinite range is split at 0). Nodes are interior,
// so endpoint singularities are never evaluated.
//
// Throws Error("non-finite-integrand") if h produces NaN/Inf at a node.
IntegralResult integrate(const std::function<double(double)>& h,
                         double lo, double hi, double tol = kDefaultTol);

// Composite trapezoid over a strictly increasing grid.
double grid_integrate(std::span<const double> xs, std::span<const double> ys);

}  // namespace varj
