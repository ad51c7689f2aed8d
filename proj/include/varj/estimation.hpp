#pragma once

#include <optional>
#include <vector>

#include "varj/distributions.hpp"
#include "varj/measures.hpp"

namespace varj {

// Rule-of-thumb bandwidth 0.9 min(sd, IQR/1.349) n^{-1/5}. sd uses the n-1
// divisor; quartiles are linear-interpolation quantiles (index (n-1)p).
double silverman_bandwidth(const Sample& s);

// Gaussian-kernel estimate on a uniform grid over
// [min - cut*h, max + cut*h]; every ordinate is the exact mixture value (no
// binning), so results are reproducible bit for bit. With truncate_at_zero
// the grid is clipped at 0 and the ordinates renormalized.
DensityEstimate kde(const Sample& s, std::optional<double> bandwidth = std::nullopt,
                    int gridpoints = 512, double cut = 3.0, bool truncate_at_zero = false);

// The data-vs-candidate measures of the goodness-of-fit pipeline, with
// f = est (grid integration) and g = candidate:
// J(X|Y), VarJ(X|Y), K(X,Y), VarK(X,Y), J(X,Y), VarJ(X,Y).
std::vector<MeasureReport> empirical_measures(const DensityEstimate& est,
                                              const Distribution& candidate,
                                              const LogRatioPolicy& policy = {});

}  // namespace varj
