#include "cadistort/decomposition.hpp"

#include "cadistort/errors.hpp"

namespace cadistort {

const char* to_string(Method method) { return method == Method::CA ? "CA" : "TCA"; }

Vector standardized_singular_values(const CorrespondenceModel& model) {
    const Vector inv_sqrt_r = model.r.cwiseSqrt().cwiseInverse();
    const Vector inv_sqrt_c = model.c.cwiseSqrt().cwiseInverse();
    const Matrix S = inv_sqrt_r.asDiagonal() * model.D * inv_sqrt_c.asDiagonal();
    Eigen::BDCSVD<Matrix> svd(S);
    return svd.singularValues();
}

Eigen::Index numerical_rank(const Vector& singular_values) {
    if (singular_values.size() == 0 || !(singular_values(0) > kRankTolerance)) return 0;
    const double cutoff = kRankTolerance * singular_values(0);
    return (singular_values.array() > cutoff).count();
}

Eigen::Index numerical_rank(const CorrespondenceModel& model) {
    return numerical_rank(standardized_singular_values(model));
}

Matrix reconstruct_association(const FactorDecomposition& dec, Eigen::Index axes) {
    if (axes < 0 || axes > dec.k) {
        throw InputError("cannot reconstruct from " + std::to_string(axes) + " of " +
                         std::to_string(dec.k) + " axes");
    }
    Matrix out = Matrix::Zero(dec.row_scores.rows(), dec.col_scores.rows());
    for (Eigen::Index a = 0; a < axes; ++a) {
        out.noalias() += dec.row_scores.col(a) * dec.col_scores.col(a).transpose() / dec.deltas(a);
    }
    return out;
}

}  // namespace cadistort
