#pragma once

#include "cadistort/report.hpp"
#include "cadistort/tca.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace cadistort {

enum class MethodSelection { Ca, Tca, Both };
enum class AxisSelection { Rows, Cols, Both };

struct AnalysisConfig {
    std::string input_path;
    MethodSelection method = MethodSelection::Both;
    Eigen::Index dims = 3;
    AxisSelection axis = AxisSelection::Both;
    TsvdStrategy tca_strategy = TsvdStrategy::Auto;
    int restarts = 20;
    std::uint64_t seed = 0;
    double rel_tol = kDefaultIsometryTolerance;
    bool drop_empty = false;
    std::optional<char> delimiter;
    ReportFormat format = ReportFormat::Tsv;
    std::optional<std::string> map_path;
    std::pair<Eigen::Index, Eigen::Index> map_axes{1, 2};
    /// Report destination; standard output when unset.
    std::optional<std::string> output_path;
};

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

/// Loads the table, decomposes it with the selected methods, and writes one
/// distortion report per (method, axis) plus the table summary to `out`
/// (or config.output_path). Warnings and errors go to `err`. With both
/// methods selected, maps are written next to map_path with ".ca"/".tca"
/// inserted before the extension.
int run(const AnalysisConfig& config, std::ostream& out, std::ostream& err);

/// Map path for one method when both are written.
std::string method_map_path(const std::string& map_path, Method method);

}  // namespace cadistort
