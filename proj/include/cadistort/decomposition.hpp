#pragma once

#include "cadistort/contingency.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cadistort {

enum class Method { CA, TCA };

const char* to_string(Method method);

/// Pair of sign vectors found by one taxicab SVD step.
struct SignPair {
    Eigen::VectorXi u;  // length J, entries +-1
    Eigen::VectorXi v;  // length I, entries +-1
};

/// Factor scores of a CA or TCA decomposition:
///   Delta_ij = sum_a f_a(i) g_a(j) / delta_a.
/// Column a of row_scores / col_scores holds axis a+1.
struct FactorDecomposition {
    Method method = Method::CA;
    Eigen::Index k = 0;
    Vector deltas;
    Matrix row_scores;
    Matrix col_scores;
    /// One entry per axis, TCA only.
    std::vector<SignPair> sign_vectors;
    /// Numerical rank of the residual matrix D.
    Eigen::Index rank = 0;
    /// Non-fatal conditions met while decomposing (e.g. early truncation).
    std::vector<std::string> warnings;

    const Matrix& scores(Axis axis) const { return axis == Axis::Rows ? row_scores : col_scores; }
};

/// Requested number of axes; std::nullopt means "full" (= rank).
using AxisCount = std::optional<Eigen::Index>;

/// Relative cut-off on singular values of the standardized residual used to
/// define the numerical rank: sigma_a > kRankTolerance * sigma_1. The rank is
/// 0 when sigma_1 itself is at most kRankTolerance.
inline constexpr double kRankTolerance = 1e-12;

/// Singular values of S_ij = D_ij / sqrt(r_i c_j), in non-increasing order.
Vector standardized_singular_values(const CorrespondenceModel& model);

Eigen::Index numerical_rank(const Vector& singular_values);
Eigen::Index numerical_rank(const CorrespondenceModel& model);

/// Reconstructs the association index from the first `axes` axes.
Matrix reconstruct_association(const FactorDecomposition& dec, Eigen::Index axes);

}  // namespace cadistort
