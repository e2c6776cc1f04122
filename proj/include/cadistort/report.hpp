#pragma once

#include "cadistort/distortion.hpp"

#include <optional>
#include <string>
#include <utility>

namespace cadistort {

enum class ReportFormat { Tsv, Json };

/// Serializes a distortion report, optionally with intrinsic-dimension
/// bounds. TSV rounds to 4 decimals; JSON keeps full precision and a fixed
/// key order: method, axis, dims, rank, rel_tol, total, points,
/// weighted_average, deltas, constants, bounds.
std::string emit_report(const DistortionReport& report,
                        const std::optional<IntrinsicDimensionBounds>& bounds,
                        ReportFormat format);

struct ParsedReport {
    DistortionReport report;
    std::optional<IntrinsicDimensionBounds> bounds;
};

/// Inverse of emit_report(..., ReportFormat::Json).
ParsedReport parse_report_json(const std::string& document);

/// Static SVG 1.1 factor map of axes (first, second), 1-based: row points
/// as circles, column points as triangles, labels, origin crosshair and
/// axis captions carrying the principal values.
std::string emit_map(const FactorDecomposition& dec, const std::vector<std::string>& row_labels,
                     const std::vector<std::string>& col_labels,
                     std::pair<Eigen::Index, Eigen::Index> axes = {1, 2});

}  // namespace cadistort
