#pragma once

#include <string>
#include <utility>
#include <vector>

namespace varj {

// Rounds to 10 significant decimal digits, the serialization precision of
// every numeric report field (diffable output without float-bit noise).
double round_sig10(double v);
std::string format_sig10(double v);

// Minimal density-overlay plot: one polyline per named curve over a shared
// abscissa grid. Throws Error("io-error") when the file cannot be written.
void write_density_svg(const std::string& path, const std::vector<double>& xs,
                       const std::vector<std::pair<std::string, std::vector<double>>>& curves);

}  // namespace varj
