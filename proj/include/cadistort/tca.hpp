#pragma once

#include "cadistort/decomposition.hpp"

#include <cstdint>
#include <vector>

namespace cadistort {

/// Outcome of one taxicab SVD step on a residual matrix R (I x J):
/// delta = ||R u||_1 = v^T R u with v = sign(R u).
struct TsvdStepResult {
    Eigen::VectorXi u;  // length J
    Eigen::VectorXi v;  // length I
    double delta = 0.0;
    bool certified = false;  // global optimum, i.e. produced by enumeration
};

enum class TsvdStrategy { Auto, Exhaustive, Iterative };

const char* to_string(TsvdStrategy strategy);

/// Largest min(I, J) handled by exhaustive enumeration.
inline constexpr Eigen::Index kExhaustiveThreshold = 20;

/// sign(x) with sign(0) = +1.
Eigen::VectorXi sign_vector(const Vector& x);

/// Maximizes ||R u||_1 over all u in {-1,+1}^J by enumerating the 2^(m-1)
/// sign classes of the smaller axis (m = min(I, J)) in Gray-code order.
/// Among equal maxima the lexicographically smallest u (with -1 < +1) whose
/// first entry is +1 wins. The returned u always has u(0) = +1.
/// Throws InputError when m exceeds `threshold`.
TsvdStepResult tsvd_step_exhaustive(const Matrix& residual,
                                    Eigen::Index threshold = kExhaustiveThreshold);

/// Objective values visited by one criss-cross run, one per half-step:
/// ||R u_0||_1, ||R^T v_0||_1, ||R u_1||_1, ...
using AscentTrace = std::vector<double>;

/// Criss-cross ascent from `start`: v <- sign(R u), u <- sign(R^T v) until u
/// stops changing or the objective stops increasing.
TsvdStepResult criss_cross(const Matrix& residual, const Eigen::VectorXi& start,
                           AscentTrace* trace = nullptr);

/// Best criss-cross fixed point over deterministic starts: the signs of the
/// leading (up to 10) right singular vectors of `residual`, followed by
/// `restarts` random sign vectors drawn from `seed`. Never certified.
TsvdStepResult tsvd_step_iterative(const Matrix& residual, int restarts = 20,
                                   std::uint64_t seed = 0);

struct TcaOptions {
    TsvdStrategy strategy = TsvdStrategy::Auto;
    int restarts = 20;
    std::uint64_t seed = 0;
    Eigen::Index exhaustive_threshold = kExhaustiveThreshold;
};

/// Taxicab correspondence analysis. At step a, with residual D_a (D_1 = D):
///   (u_a, v_a, delta_a) from the selected TSVD step,
///   f_a = D_a u_a / r,  g_a = D_a^T v_a / c,
///   D_{a+1} = D_a - (D_a u_a)(v_a^T D_a) / delta_a.
/// Stops early, with a warning, once delta_a falls below 1e-12.
FactorDecomposition tca_decompose(const CorrespondenceModel& model, AxisCount k = std::nullopt,
                                  const TcaOptions& options = {});

/// L1 distance of a profile from its barycenter.
double taxicab_distance(const CorrespondenceModel& model, Axis axis, Eigen::Index index);

/// sum_ij |D_ij|
double tca_total_dispersion(const CorrespondenceModel& model);

/// sum_{a <= d} |f_a(index)| (or |g_a| for columns).
double embedded_l1_distance(const FactorDecomposition& dec, Axis axis, Eigen::Index index,
                            Eigen::Index d);

}  // namespace cadistort
