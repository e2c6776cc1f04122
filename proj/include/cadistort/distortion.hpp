#pragma once

#include "cadistort/decomposition.hpp"

#include <optional>
#include <vector>

namespace cadistort {

enum class Distortion { Contraction, Isometry, Stretching };

const char* to_string(Distortion distortion);

inline constexpr double kDefaultIsometryTolerance = 1e-9;

/// Compares a raw distance with its embedded counterpart.
/// |embedded - raw| <= rel_tol * raw is an isometry; raw == 0 is reported as
/// an isometry by convention. Throws InputError on negative inputs.
Distortion classify(double raw, double embedded, double rel_tol = kDefaultIsometryTolerance);

struct DistortionConstants {
    double c1 = 0.0;
    std::optional<double> c2;  // TCA only
};

/// Raw versus embedded distances of every profile of one axis from its
/// barycenter, for a set of embedding dimensions.
///
/// Raw distances are squared chi-square distances for CA and taxicab
/// distances for TCA; embedded distances are sum f^2 and sum |f| over the
/// first d axes respectively.
struct DistortionReport {
    Method method = Method::CA;
    Axis axis = Axis::Rows;
    std::vector<Eigen::Index> dims;
    std::vector<std::string> labels;
    Vector raw;
    /// points x dims
    Matrix embedded;
    std::vector<std::vector<Distortion>> classification;  // [point][dim]
    /// Points entering the distortion constants: raw > 0 and embedded > 0.
    std::vector<std::vector<bool>> admissible;  // [point][dim]
    /// Weighted average of raw distances: total inertia (CA) or total
    /// dispersion (TCA).
    double raw_weighted_average = 0.0;
    /// The same total computed directly from the residual matrix.
    double total = 0.0;
    /// Per dim, weighted average of embedded distances.
    Vector embedded_weighted_average;
    /// Per dim, sum_{a<=d} delta_a^2 (CA) or sum_{a<=d} delta_a (TCA).
    Vector cumulative_deltas;
    /// Per dim.
    std::vector<DistortionConstants> constants;
    Eigen::Index rank = 0;
    double rel_tol = kDefaultIsometryTolerance;
};

/// Builds the report for `axis` over `dims` (each in [1, dec.k]).
/// `labels` may be empty, in which case points are numbered from 1.
DistortionReport distortion_report(const CorrespondenceModel& model,
                                   const FactorDecomposition& dec, Axis axis,
                                   const std::vector<Eigen::Index>& dims,
                                   const std::vector<std::string>& labels = {},
                                   double rel_tol = kDefaultIsometryTolerance);

/// c1 = min embedded/raw over admissible points; c2 = max (TCA only).
/// For CA with d < rank, checks 0 < c1 and every ratio <= 1 (+1e-10) and
/// throws NumericalError otherwise. Throws InputError if `d` is not in the
/// report or no point is admissible.
DistortionConstants distortion_constants(const DistortionReport& report, Eigen::Index d);

/// Crossing points of the cumulative principal values with the total
/// dispersion T:
///   upper = smallest d with sum_{a<=d} delta_a >= T,
///   lower = largest d with sum_{a<=d} delta_a <= T.
/// delta_1 = T happens whenever the residual's sign pattern is rank one, and
/// then lower = upper = 1 regardless of the rank.
struct IntrinsicDimensionBounds {
    Eigen::Index lower = 1;
    Eigen::Index upper = 1;
    double total_dispersion = 0.0;
    Vector cumulative_deltas;
    Eigen::Index point_estimate = 1;
    /// False when the cumulative sums never reach T (upper is then the
    /// number of available axes).
    bool threshold_reached = true;
};

IntrinsicDimensionBounds intrinsic_dimension_bounds(const Vector& deltas, double total_dispersion);

}  // namespace cadistort
