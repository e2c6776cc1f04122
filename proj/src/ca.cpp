#include "cadistort/ca.hpp"

#include "cadistort/errors.hpp"

namespace cadistort {

namespace {

void check_dimension(const FactorDecomposition& dec, Eigen::Index d) {
    if (d < 1 || d > dec.k) {
        throw InputError("embedding dimension " + std::to_string(d) + " outside [1, " +
                         std::to_string(dec.k) + "]");
    }
}

}  // namespace

FactorDecomposition ca_decompose(const CorrespondenceModel& model, AxisCount k) {
    const Vector inv_sqrt_r = model.r.cwiseSqrt().cwiseInverse();
    const Vector inv_sqrt_c = model.c.cwiseSqrt().cwiseInverse();
    const Matrix S = inv_sqrt_r.asDiagonal() * model.D * inv_sqrt_c.asDiagonal();
    Eigen::BDCSVD<Matrix> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);

    FactorDecomposition dec;
    dec.method = Method::CA;
    dec.rank = numerical_rank(svd.singularValues());
    const Eigen::Index axes = k.value_or(dec.rank);
    if (axes < 0 || axes > dec.rank) {
        throw InputError("requested " + std::to_string(axes) + " CA axes but rank is " +
                         std::to_string(dec.rank));
    }
    dec.k = axes;
    dec.deltas = svd.singularValues().head(axes);
    dec.row_scores = inv_sqrt_r.asDiagonal() * svd.matrixU().leftCols(axes) * dec.deltas.asDiagonal();
    dec.col_scores = inv_sqrt_c.asDiagonal() * svd.matrixV().leftCols(axes) * dec.deltas.asDiagonal();

    for (Eigen::Index a = 0; a < axes; ++a) {
        Eigen::Index argmax = 0;
        dec.row_scores.col(a).cwiseAbs().maxCoeff(&argmax);
        if (dec.row_scores(argmax, a) < 0.0) {
            dec.row_scores.col(a) *= -1.0;
            dec.col_scores.col(a) *= -1.0;
        }
    }
    return dec;
}

double benzecri_distance(const CorrespondenceModel& model, Axis axis, Eigen::Index index) {
    const Vector& barycenter = model.weights(opposite(axis));
    const Vector centered = profile(model, axis, index) - barycenter;
    return (centered.array().square() / barycenter.array()).sum();
}

double ca_total_inertia(const CorrespondenceModel& model) {
    return (model.D.array().square() / (model.r * model.c.transpose()).array()).sum();
}

double embedded_sq_distance(const FactorDecomposition& dec, Axis axis, Eigen::Index index,
                            Eigen::Index d) {
    check_dimension(dec, d);
    const Matrix& scores = dec.scores(axis);
    if (index < 0 || index >= scores.rows()) {
        throw InputError(std::string(to_string(axis)) + " index " + std::to_string(index) +
                         " out of range");
    }
    return scores.row(index).head(d).squaredNorm();
}

}  // namespace cadistort
