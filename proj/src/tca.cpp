#include "cadistort/tca.hpp"

#include "cadistort/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace cadistort {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kExhaustedDelta = 1e-12;
constexpr int kMaxSweeps = 10000;
constexpr Eigen::Index kSvdStarts = 10;
// Above this many cells the seeding singular vectors come from subspace
// iteration instead of a full SVD.
constexpr Eigen::Index kDenseSvdCells = 1'000'000;

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (a(k) != b(k)) return a(k) < b(k);
    }
    return false;
}

bool is_tie(double a, double b) {
    return std::abs(a - b) <= kTieTolerance * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Orients u so that u(0) = +1, then sets v = sign(R u) and delta = ||R u||_1.
TsvdStepResult finish_step(const Matrix& residual, Eigen::VectorXi u, bool certified) {
    if (u.size() > 0 && u(0) < 0) u = -u;
    const Vector ru = residual * u.cast<double>();
    TsvdStepResult out;
    out.v = sign_vector(ru);
    out.u = std::move(u);
    out.delta = ru.lpNorm<1>();
    out.certified = certified;
    return out;
}

// Keeps the better of two candidates: larger delta, ties to smaller u.
void keep_best(TsvdStepResult& best, TsvdStepResult candidate, bool& have_best) {
    if (!have_best) {
        best = std::move(candidate);
        have_best = true;
        return;
    }
    if (is_tie(candidate.delta, best.delta)) {
        if (lex_less(candidate.u, best.u)) best = std::move(candidate);
    } else if (candidate.delta > best.delta) {
        best = std::move(candidate);
    }
}

Matrix orthonormal_basis(const Matrix& m) {
    Eigen::HouseholderQR<Matrix> qr(m);
    return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

Matrix leading_right_singular_vectors(const Matrix& residual, Eigen::Index count) {
    if (residual.size() <= kDenseSvdCells) {
        Eigen::BDCSVD<Matrix> svd(residual, Eigen::ComputeThinV);
        return svd.matrixV().leftCols(count);
    }
    const Eigen::Index width =
        std::min<Eigen::Index>(count + 5, std::min(residual.rows(), residual.cols()));
    std::mt19937_64 gen(0x5eed);
    std::normal_distribution<double> normal;
    Matrix q(residual.cols(), width);
    for (Eigen::Index j = 0; j < q.cols(); ++j)
        for (Eigen::Index i = 0; i < q.rows(); ++i) q(i, j) = normal(gen);
    q = orthonormal_basis(q);
    for (int it = 0; it < 25; ++it) {
        const Matrix z = orthonormal_basis(residual * q);
        q = orthonormal_basis(residual.transpose() * z);
    }
    Eigen::BDCSVD<Matrix> small(residual * q, Eigen::ComputeThinV);
    return (q * small.matrixV()).leftCols(count);
}

}  // namespace

const char* to_string(TsvdStrategy strategy) {
    switch (strategy) {
        case TsvdStrategy::Auto: return "auto";
        case TsvdStrategy::Exhaustive: return "exhaustive";
        case TsvdStrategy::Iterative: return "iterative";
    }
    return "?";
}

Eigen::VectorXi sign_vector(const Vector& x) {
    return x.unaryExpr([](double value) { return value >= 0.0 ? 1 : -1; });
}

TsvdStepResult tsvd_step_exhaustive(const Matrix& residual, Eigen::Index threshold) {
    const bool over_cols = residual.cols() <= residual.rows();
    // Enumerate s over the columns of A; the objective is ||A s||_1.
    const Matrix transposed = over_cols ? Matrix() : Matrix(residual.transpose());
    const Matrix& A = over_cols ? residual : transposed;
    const Eigen::Index m = A.cols();
    if (m > threshold) {
        throw InputError("exhaustive TSVD limited to min(I,J) <= " + std::to_string(threshold) +
                         ", got " + std::to_string(m));
    }
    if (m == 0 || A.rows() == 0) throw InputError("exhaustive TSVD on an empty residual");

    // Tie-break key is always u. When enumerating v, u is only determined
    // where R^T v is nonzero; the free entries take -1, after u(0) = +1.
    const double zero_tol = 1e-12 * std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    const auto key_of = [&](const Eigen::VectorXi& s) -> Eigen::VectorXi {
        if (over_cols) return s;
        const Vector w = residual.transpose() * s.cast<double>();
        const Eigen::Index n = w.size();
        Eigen::Index first = 0;
        while (first < n && std::abs(w(first)) <= zero_tol) ++first;
        int orient = 1;
        if (first < n) orient = (w(first) > 0.0) == (first == 0) ? 1 : -1;
        Eigen::VectorXi u(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(w(j)) <= zero_tol) {
                u(j) = j == 0 ? 1 : -1;
            } else {
                u(j) = w(j) > 0.0 ? orient : -orient;
            }
        }
        return u;
    };

    Eigen::VectorXi s = Eigen::VectorXi::Ones(m);
    Vector y = A.rowwise().sum();
    Eigen::VectorXi best = s;
    double best_obj = y.lpNorm<1>();
    Eigen::VectorXi best_key;
    bool best_key_valid = false;

    const std::uint64_t classes = std::uint64_t{1} << (m - 1);
    for (std::uint64_t t = 1; t < classes; ++t) {
        const auto flip = static_cast<Eigen::Index>(std::countr_zero(t)) + 1;
        s(flip) = -s(flip);
        y.noalias() += (2.0 * s(flip)) * A.col(flip);
        if ((t & 0xFFF) == 0) y.noalias() = A * s.cast<double>();  // bound drift
        const double obj = y.lpNorm<1>();
        if (is_tie(obj, best_obj)) {
            if (!best_key_valid) {
                best_key = key_of(best);
                best_key_valid = true;
            }
            Eigen::VectorXi key = key_of(s);
            if (lex_less(key, best_key)) {
                best = s;
                best_obj = obj;
                best_key = std::move(key);
            }
        } else if (obj > best_obj) {
            best = s;
            best_obj = obj;
            best_key_valid = false;
        }
    }

    return finish_step(residual, key_of(best), true);
}

TsvdStepResult criss_cross(const Matrix& residual, const Eigen::VectorXi& start,
                           AscentTrace* trace) {
    if (start.size() != residual.cols()) throw InputError("start vector has wrong length");
    Eigen::VectorXi u = start;
    double obj = (residual * u.cast<double>()).lpNorm<1>();
    if (trace != nullptr) trace->assign(1, obj);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const Eigen::VectorXi v = sign_vector(residual * u.cast<double>());
        const Vector rtv = residual.transpose() * v.cast<double>();
        Eigen::VectorXi next = sign_vector(rtv);
        if (next == u) break;
        const double next_obj = (residual * next.cast<double>()).lpNorm<1>();
        if (trace != nullptr) {
            trace->push_back(rtv.lpNorm<1>());
            trace->push_back(next_obj);
        }
        if (!(next_obj > obj)) break;
        u = std::move(next);
        obj = next_obj;
    }
    return finish_step(residual, std::move(u), false);
}

TsvdStepResult tsvd_step_iterative(const Matrix& residual, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw InputError("restarts must be >= 1");
    if (residual.size() == 0) throw InputError("iterative TSVD on an empty residual");

    TsvdStepResult best;
    bool have_best = false;
    const Eigen::Index svd_starts =
        std::min<Eigen::Index>(kSvdStarts, std::min(residual.rows(), residual.cols()));
    if (residual.cwiseAbs().maxCoeff() > 0.0) {
        const Matrix seeds = leading_right_singular_vectors(residual, svd_starts);
        for (Eigen::Index a = 0; a < seeds.cols(); ++a) {
            keep_best(best, criss_cross(residual, sign_vector(seeds.col(a))), have_best);
        }
    }
    std::mt19937_64 gen(seed);
    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXi start(residual.cols());
        for (Eigen::Index j = 0; j < start.size(); ++j) start(j) = (gen() >> 63) != 0 ? 1 : -1;
        keep_best(best, criss_cross(residual, start), have_best);
    }
    return best;
}

FactorDecomposition tca_decompose(const CorrespondenceModel& model, AxisCount k,
                                  const TcaOptions& options) {
    FactorDecomposition dec;
    dec.method = Method::TCA;
    dec.rank = numerical_rank(model);
    const Eigen::Index axes = k.value_or(dec.rank);
    if (axes < 0 || axes > dec.rank) {
        throw InputError("requested " + std::to_string(axes) + " TCA axes but rank is " +
                         std::to_string(dec.rank));
    }

    const Eigen::Index smaller = std::min(model.rows(), model.cols());
    const bool below_threshold = smaller <= options.exhaustive_threshold;
    TsvdStrategy strategy = options.strategy;
    if (strategy == TsvdStrategy::Auto) {
        strategy = below_threshold ? TsvdStrategy::Exhaustive : TsvdStrategy::Iterative;
    }

    dec.deltas.resize(axes);
    dec.row_scores.resize(model.rows(), axes);
    dec.col_scores.resize(model.cols(), axes);
    Matrix residual = model.D;
    Eigen::Index extracted = 0;
    for (Eigen::Index a = 0; a < axes; ++a) {
        TsvdStepResult step =
            strategy == TsvdStrategy::Exhaustive
                ? tsvd_step_exhaustive(residual, options.exhaustive_threshold)
                : tsvd_step_iterative(residual, options.restarts,
                                      options.seed + static_cast<std::uint64_t>(a));
        if (step.delta < kExhaustedDelta) {
            dec.warnings.push_back("TCA rank exhausted after " + std::to_string(a) + " of " +
                                   std::to_string(axes) + " axes (delta below 1e-12)");
            break;
        }
        if (a > 0 && step.delta > dec.deltas(a - 1) * (1.0 + 1e-9)) {
            if (strategy == TsvdStrategy::Iterative && below_threshold) {
                TcaOptions exact = options;
                exact.strategy = TsvdStrategy::Exhaustive;
                FactorDecomposition redo = tca_decompose(model, k, exact);
                redo.warnings.insert(redo.warnings.begin(),
                                     "iterative TSVD gave increasing deltas at axis " +
                                         std::to_string(a + 1) + "; re-solved exhaustively");
                return redo;
            }
            if (!step.certified) {
                dec.warnings.push_back("delta increased at axis " + std::to_string(a + 1) +
                                       " with an uncertified iterative TSVD step");
            }
        }

        const Vector du = residual * step.u.cast<double>();
        const Vector dtv = residual.transpose() * step.v.cast<double>();
        dec.deltas(a) = step.delta;
        dec.row_scores.col(a) = du.cwiseQuotient(model.r);
        dec.col_scores.col(a) = dtv.cwiseQuotient(model.c);
        residual.noalias() -= du * dtv.transpose() / step.delta;

        Eigen::Index argmax = 0;
        dec.row_scores.col(a).cwiseAbs().maxCoeff(&argmax);
        if (dec.row_scores(argmax, a) < 0.0) {
            dec.row_scores.col(a) *= -1.0;
            dec.col_scores.col(a) *= -1.0;
            step.u = -step.u;
            step.v = -step.v;
        }
        dec.sign_vectors.push_back({std::move(step.u), std::move(step.v)});
        ++extracted;
    }
    dec.k = extracted;
    dec.deltas.conservativeResize(extracted);
    dec.row_scores.conservativeResize(Eigen::NoChange, extracted);
    dec.col_scores.conservativeResize(Eigen::NoChange, extracted);
    return dec;
}

double taxicab_distance(const CorrespondenceModel& model, Axis axis, Eigen::Index index) {
    return (profile(model, axis, index) - model.weights(opposite(axis))).lpNorm<1>();
}

double tca_total_dispersion(const CorrespondenceModel& model) {
    return model.D.lpNorm<1>();
}

double embedded_l1_distance(const FactorDecomposition& dec, Axis axis, Eigen::Index index,
                            Eigen::Index d) {
    if (d < 1 || d > dec.k) {
        throw InputError("embedding dimension " + std::to_string(d) + " outside [1, " +
                         std::to_string(dec.k) + "]");
    }
    const Matrix& scores = dec.scores(axis);
    if (index < 0 || index >= scores.rows()) {
        throw InputError(std::string(to_string(axis)) + " index " + std::to_string(index) +
                         " out of range");
    }
    return scores.row(index).head(d).lpNorm<1>();
}

}  // namespace cadistort
