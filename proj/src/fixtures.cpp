#include "varj/fixtures.hpp"

#include "varj/error.hpp"

namespace varj {

namespace {

constexpr double kLocomotive[] = {
    22.5, 37.5, 46.0, 48.5, 51.5, 53.0, 54.5, 57.5, 66.5, 68.0,
    69.5, 76.5, 77.0, 78.5, 80.0, 81.5, 82.0, 83.0, 84.0, 91.5,
    93.5, 102.5, 107.0, 108.5, 112.5, 113.5, 116.0, 117.0, 118.5, 119.0,
    120.0, 122.5, 123.0, 127.5, 131.0, 132.5, 134.0};

constexpr double kBearings[] = {
    17.88, 28.92, 33.00, 41.52, 42.12, 45.60, 48.40, 51.84, 51.96, 54.12,
    55.56, 67.80, 68.64, 68.64, 68.88, 84.12, 93.12, 98.64, 105.12, 105.84,
    127.92, 128.04, 173.40};

}  // namespace

std::span<const double> locomotive_failures() { return kLocomotive; }
std::span<const double> bearing_revolutions() { return kBearings; }

std::vector<std::string_view> fixture_names() { return {"locomotive", "bearings"}; }

bool is_fixture(std::string_view name) { return name == "locomotive" || name == "bearings"; }

Sample fixture_sample(std::string_view name) {
    if (name == "locomotive") {
        return Sample::from_values({kLocomotive, kLocomotive + std::size(kLocomotive)});
    }
    if (name == "bearings") {
        return Sample::from_values({kBearings, kBearings + std::size(kBearings)});
    }
    fail("usage-error", "unknown fixture '" + std::string(name) + "'");
}

}  // namespace varj
