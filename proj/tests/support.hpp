#pragma once

// Test-only helpers: seeded random tables and oracles that do not share a
// code path with the library implementation they check.

#include "cadistort/contingency.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cadistort::testing {

/// Random I x J table of counts in [0, max_count] with positive margins.
inline ContingencyTable random_table(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols,
                                     int max_count = 20) {
    std::uniform_int_distribution<int> cell(0, max_count);
    Matrix counts(rows, cols);
    do {
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) counts(i, j) = cell(gen);
    } while ((counts.rowwise().sum().array() == 0).any() ||
             (counts.colwise().sum().array() == 0).any());
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    for (Eigen::Index i = 0; i < rows; ++i) row_labels.push_back("r" + std::to_string(i + 1));
    for (Eigen::Index j = 0; j < cols; ++j) col_labels.push_back("c" + std::to_string(j + 1));
    return ContingencyTable(row_labels, col_labels, counts);
}

/// The 100 seeded tables of sizes 3x3 .. 8x8 shared by the property and
/// acceptance suites.
inline std::vector<ContingencyTable> random_suite(std::uint64_t seed = 20240301, int count = 100) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> dim(3, 8);
    std::vector<ContingencyTable> out;
    for (int t = 0; t < count; ++t) {
        const int rows = dim(gen);
        const int cols = dim(gen);
        out.push_back(random_table(gen, rows, cols));
    }
    return out;
}

/// max ||R u||_1 over every u in {-1,+1}^J, no symmetry reduction.
inline double brute_force_l1_max(const Matrix& residual) {
    const auto cols = residual.cols();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cols); ++mask) {
        Vector u(cols);
        for (Eigen::Index j = 0; j < cols; ++j) u(j) = (mask >> j) & 1 ? -1.0 : 1.0;
        best = std::max(best, (residual * u).lpNorm<1>());
    }
    return best;
}

/// CA principal inertias from the eigenvalues of S^T S (descending),
/// independent of the SVD route used by ca_decompose.
inline Vector principal_inertias_by_eigen(const Matrix& counts) {
    const Matrix P = counts / counts.sum();
    const Vector r = P.rowwise().sum();
    const Vector c = P.colwise().sum().transpose();
    Matrix S(P.rows(), P.cols());
    for (Eigen::Index i = 0; i < P.rows(); ++i)
        for (Eigen::Index j = 0; j < P.cols(); ++j)
            S(i, j) = (P(i, j) - r(i) * c(j)) / std::sqrt(r(i) * c(j));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S.transpose() * S);
    return eig.eigenvalues().reverse();
}

/// Row chi-square distance through the density form
/// sum_j p_+j (p_ij / (p_+j p_i+) - 1)^2.
inline double benzecri_row_by_density(const Matrix& counts, Eigen::Index i) {
    const Matrix P = counts / counts.sum();
    const Vector r = P.rowwise().sum();
    const Vector c = P.colwise().sum().transpose();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < P.cols(); ++j) {
        const double dens = P(i, j) / (c(j) * r(i)) - 1.0;
        sum += c(j) * dens * dens;
    }
    return sum;
}

/// Row taxicab distance through the density form sum_j p_+j |p_ij/(p_+j p_i+) - 1|.
inline double taxicab_row_by_density(const Matrix& counts, Eigen::Index i) {
    const Matrix P = counts / counts.sum();
    const Vector r = P.rowwise().sum();
    const Vector c = P.colwise().sum().transpose();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < P.cols(); ++j) sum += c(j) * std::abs(P(i, j) / (c(j) * r(i)) - 1.0);
    return sum;
}

/// True when signs a_i, b_j exist with a_i b_j D_ij >= 0 for every cell,
/// i.e. the nonzero sign pattern of D is rank one. Checked as a two-colouring
/// of the bipartite graph of nonzero cells.
inline bool sign_pattern_rank_one(const Matrix& D, double zero_tol = 1e-15) {
    const Eigen::Index rows = D.rows();
    const Eigen::Index cols = D.cols();
    std::vector<int> colour(static_cast<std::size_t>(rows + cols), 0);
    for (Eigen::Index start = 0; start < rows + cols; ++start) {
        if (colour[static_cast<std::size_t>(start)] != 0) continue;
        colour[static_cast<std::size_t>(start)] = 1;
        std::vector<Eigen::Index> stack{start};
        while (!stack.empty()) {
            const Eigen::Index node = stack.back();
            stack.pop_back();
            const int here = colour[static_cast<std::size_t>(node)];
            const bool is_row = node < rows;
            const Eigen::Index count = is_row ? cols : rows;
            for (Eigen::Index other = 0; other < count; ++other) {
                const double cell = is_row ? D(node, other) : D(other, node - rows);
                if (std::abs(cell) <= zero_tol) continue;
                const Eigen::Index next = is_row ? rows + other : other;
                const int want = cell > 0 ? here : -here;
                int& seen = colour[static_cast<std::size_t>(next)];
                if (seen == 0) {
                    seen = want;
                    stack.push_back(next);
                } else if (seen != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline int sgn(double x) { return x >= 0.0 ? 1 : -1; }

}  // namespace cadistort::testing
