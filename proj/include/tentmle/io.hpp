#pragma once

#include <iosfwd>
#include <string>

#include "tentmle/pipeline.hpp"

namespace tentmle {

// CSV of sample points: one row per point, optional header (auto-detected),
// optional trailing weight column when inline_weights is set.
struct CsvSamples {
    PointConfig config;
    std::vector<double> raw_weights;  // empty unless inline weights were read
};
CsvSamples read_samples_csv(const std::string& path, bool inline_weights);

void write_samples_csv(const std::string& path, const PointConfig& X);

// Estimate results round-trip through JSON (17 significant digits).
std::string estimate_to_json(const EstimateResult& r);
EstimateResult estimate_from_json(const std::string& text);
void write_estimate_json(const std::string& path, const EstimateResult& r);
EstimateResult read_estimate_json(const std::string& path);

// Midpoint-rule density grid over the support's bounding box, written as CSV
// with one row per grid cell: coordinates of the midpoint, then the density.
void write_density_grid_csv(const std::string& path, const EstimateResult& r, int grid);

struct LossReport {
    double l2 = 0.0;
    double hellinger = 0.0;
    double linf = 0.0;
    int grid = 0;
    double box_lo = 0.0, box_hi = 0.0;  // quadrature box (per-axis extremes)
};

// Midpoint-rule losses against a reference density: "standard-gaussian" or a
// density grid CSV produced by write_density_grid_csv.
LossReport losses_against(const EstimateResult& r, const std::string& reference, int grid);

std::string loss_report_json(const LossReport& rep);

}  // namespace tentmle
