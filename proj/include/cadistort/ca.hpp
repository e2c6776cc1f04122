#pragma once

#include "cadistort/decomposition.hpp"

namespace cadistort {

/// Classical correspondence analysis through the SVD of the standardized
/// residual S = D_r^{-1/2} D D_c^{-1/2}:
///   f_a(i) = sigma_a u_a(i) / sqrt(r_i),  g_a(j) = sigma_a v_a(j) / sqrt(c_j),
///   delta_a = sigma_a.
/// Each axis is oriented so that its row score of largest magnitude is
/// positive. A model with D = 0 yields an empty decomposition (k = 0).
/// Throws InputError if `k` exceeds the numerical rank.
FactorDecomposition ca_decompose(const CorrespondenceModel& model, AxisCount k = std::nullopt);

/// Squared chi-square (Benzecri) distance of a profile from its barycenter.
double benzecri_distance(const CorrespondenceModel& model, Axis axis, Eigen::Index index);

/// sum_ij D_ij^2 / (r_i c_j)
double ca_total_inertia(const CorrespondenceModel& model);

/// sum_{a <= d} f_a(index)^2 (or g_a for columns).
double embedded_sq_distance(const FactorDecomposition& dec, Axis axis, Eigen::Index index,
                            Eigen::Index d);

}  // namespace cadistort
