#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "varj/distributions.hpp"

namespace varj {

// Embedded reference datasets, so the repro commands run without any files.

// Thousand-mile failure points of 37 locomotive controls (Lawless).
std::span<const double> locomotive_failures();

// Millions of revolutions to failure of 23 deep-groove ball bearings
// (Lieblein-Zelen data, via Lawless).
std::span<const double> bearing_revolutions();

std::vector<std::string_view> fixture_names();
bool is_fixture(std::string_view name);
Sample fixture_sample(std::string_view name);  // "locomotive" or "bearings"

}  // namespace varj
