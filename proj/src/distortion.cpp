#include "cadistort/distortion.hpp"

#include "cadistort/ca.hpp"
#include "cadistort/errors.hpp"
#include "cadistort/tca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cadistort {

namespace {

// Distances at or below this fraction of the largest raw distance count as
// zero (a profile at the barycenter, or all-zero scores).
constexpr double kNegligibleDistance = 1e-12;
constexpr double kContractionSlack = 1e-10;
constexpr double kCrossingTolerance = 1e-12;

std::size_t dim_slot(const DistortionReport& report, Eigen::Index d) {
    const auto it = std::find(report.dims.begin(), report.dims.end(), d);
    if (it == report.dims.end()) {
        throw InputError("dimension " + std::to_string(d) + " is not part of the report");
    }
    return static_cast<std::size_t>(it - report.dims.begin());
}

}  // namespace

const char* to_string(Distortion distortion) {
    switch (distortion) {
        case Distortion::Contraction: return "contraction";
        case Distortion::Isometry: return "isometry";
        case Distortion::Stretching: return "stretching";
    }
    return "?";
}

Distortion classify(double raw, double embedded, double rel_tol) {
    if (raw < 0.0 || embedded < 0.0 || std::isnan(raw) || std::isnan(embedded)) {
        throw InputError("distances must be nonnegative");
    }
    if (raw == 0.0) return Distortion::Isometry;
    if (std::abs(embedded - raw) <= rel_tol * raw) return Distortion::Isometry;
    return embedded < raw ? Distortion::Contraction : Distortion::Stretching;
}

DistortionConstants distortion_constants(const DistortionReport& report, Eigen::Index d) {
    const std::size_t slot = dim_slot(report, d);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (Eigen::Index i = 0; i < report.raw.size(); ++i) {
        if (!report.admissible[static_cast<std::size_t>(i)][slot]) continue;
        const double ratio = report.embedded(i, static_cast<Eigen::Index>(slot)) / report.raw(i);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        any = true;
    }
    if (!any) {
        throw InputError("no admissible points for distortion constants at d=" + std::to_string(d));
    }
    DistortionConstants out;
    out.c1 = lo;
    if (report.method == Method::TCA) {
        out.c2 = hi;
    } else if (d < report.rank && !(lo > 0.0 && hi <= 1.0 + kContractionSlack)) {
        throw NumericalError("CA contraction violated at d=" + std::to_string(d) +
                             ": ratios span [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    }
    return out;
}

DistortionReport distortion_report(const CorrespondenceModel& model,
                                   const FactorDecomposition& dec, Axis axis,
                                   const std::vector<Eigen::Index>& dims,
                                   const std::vector<std::string>& labels, double rel_tol) {
    if (dims.empty()) throw InputError("no embedding dimensions requested");
    for (auto d : dims) {
        if (d < 1 || d > dec.k) {
            throw InputError("embedding dimension " + std::to_string(d) + " outside [1, " +
                             std::to_string(dec.k) + "]");
        }
    }
    const Eigen::Index points = model.size(axis);
    if (dec.scores(axis).rows() != points) {
        throw InputError("decomposition does not match the model's " +
                         std::string(to_string(axis)));
    }
    if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != points) {
        throw InputError("label count does not match the number of points");
    }
    if (!(rel_tol > 0.0)) throw InputError("isometry tolerance must be positive");

    DistortionReport report;
    report.method = dec.method;
    report.axis = axis;
    report.dims = dims;
    report.rank = dec.rank;
    report.rel_tol = rel_tol;
    if (labels.empty()) {
        for (Eigen::Index i = 0; i < points; ++i) report.labels.push_back(std::to_string(i + 1));
    } else {
        report.labels = labels;
    }

    const bool ca = dec.method == Method::CA;
    report.raw.resize(points);
    report.embedded.resize(points, static_cast<Eigen::Index>(dims.size()));
    for (Eigen::Index i = 0; i < points; ++i) {
        report.raw(i) = ca ? benzecri_distance(model, axis, i) : taxicab_distance(model, axis, i);
        for (std::size_t s = 0; s < dims.size(); ++s) {
            report.embedded(i, static_cast<Eigen::Index>(s)) =
                ca ? embedded_sq_distance(dec, axis, i, dims[s])
                   : embedded_l1_distance(dec, axis, i, dims[s]);
        }
    }

    const double scale = report.raw.size() > 0 ? report.raw.maxCoeff() : 0.0;
    const double negligible = kNegligibleDistance * scale;
    const Vector& weights = model.weights(axis);
    report.raw_weighted_average = weights.dot(report.raw);
    report.total = ca ? ca_total_inertia(model) : tca_total_dispersion(model);
    report.embedded_weighted_average = report.embedded.transpose() * weights;
    report.cumulative_deltas.resize(static_cast<Eigen::Index>(dims.size()));
    for (std::size_t s = 0; s < dims.size(); ++s) {
        const auto head = dec.deltas.head(dims[s]);
        report.cumulative_deltas(static_cast<Eigen::Index>(s)) = ca ? head.squaredNorm() : head.sum();
    }

    report.classification.resize(static_cast<std::size_t>(points));
    report.admissible.resize(static_cast<std::size_t>(points));
    for (Eigen::Index i = 0; i < points; ++i) {
        auto& cls = report.classification[static_cast<std::size_t>(i)];
        auto& ok = report.admissible[static_cast<std::size_t>(i)];
        const bool raw_zero = report.raw(i) <= negligible;
        for (std::size_t s = 0; s < dims.size(); ++s) {
            const double emb = report.embedded(i, static_cast<Eigen::Index>(s));
            cls.push_back(raw_zero ? Distortion::Isometry : classify(report.raw(i), emb, rel_tol));
            ok.push_back(!raw_zero && emb > negligible);
        }
    }

    for (auto d : dims) {
        bool any = false;
        const std::size_t slot = dim_slot(report, d);
        for (const auto& ok : report.admissible) any = any || ok[slot];
        if (any) {
            report.constants.push_back(distortion_constants(report, d));
        } else {
            report.constants.push_back({std::numeric_limits<double>::quiet_NaN(), std::nullopt});
        }
    }
    return report;
}

IntrinsicDimensionBounds intrinsic_dimension_bounds(const Vector& deltas, double total_dispersion) {
    if (deltas.size() == 0) throw InputError("no principal values");
    if (!(total_dispersion > 0.0)) throw InputError("total dispersion must be positive");
    if ((deltas.array() <= 0.0).any()) throw InputError("principal values must be positive");

    IntrinsicDimensionBounds out;
    out.total_dispersion = total_dispersion;
    out.cumulative_deltas.resize(deltas.size());
    double running = 0.0;
    for (Eigen::Index a = 0; a < deltas.size(); ++a) {
        running += deltas(a);
        out.cumulative_deltas(a) = running;
    }

    const double tol = kCrossingTolerance * total_dispersion;
    const Eigen::Index n = deltas.size();
    Eigen::Index upper = -1;
    Eigen::Index lower = -1;
    for (Eigen::Index d = 1; d <= n; ++d) {
        const double cum = out.cumulative_deltas(d - 1);
        if (upper < 0 && cum >= total_dispersion - tol) upper = d;
        if (cum <= total_dispersion + tol) lower = d;
    }
    if (lower < 0) {
        throw NumericalError("first principal value exceeds the total dispersion");
    }
    out.threshold_reached = upper >= 0;
    out.upper = out.threshold_reached ? upper : n;
    out.lower = lower;
    out.point_estimate = out.upper;
    return out;
}

}  // namespace cadistort
