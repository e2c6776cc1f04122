#include "cadistort/report.hpp"

#include "cadistort/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cadistort {

using Json = nlohmann::ordered_json;

namespace {

std::string fixed4(double value) {
    if (std::isnan(value)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

Json number_or_null(double value) { return std::isnan(value) ? Json(nullptr) : Json(value); }

double number_from(const Json& value) {
    return value.is_null() ? std::numeric_limits<double>::quiet_NaN() : value.get<double>();
}

Distortion distortion_from(const std::string& name) {
    if (name == "contraction") return Distortion::Contraction;
    if (name == "isometry") return Distortion::Isometry;
    if (name == "stretching") return Distortion::Stretching;
    throw InputError("unknown classification '" + name + "'");
}

std::string tsv_report(const DistortionReport& report,
                       const std::optional<IntrinsicDimensionBounds>& bounds) {
    std::ostringstream out;
    out << "# method=" << to_string(report.method) << " axis=" << to_string(report.axis)
        << " points=" << report.raw.size() << " rank=" << report.rank << " dims=";
    for (std::size_t s = 0; s < report.dims.size(); ++s) out << (s ? "," : "") << report.dims[s];
    out << '\n';

    const char* prefix = report.method == Method::CA ? "sq_d" : "l1_d";
    out << "label\traw";
    for (auto d : report.dims) out << '\t' << prefix << d;
    for (auto d : report.dims) out << "\tclass_d" << d;
    out << '\n';

    for (Eigen::Index i = 0; i < report.raw.size(); ++i) {
        out << report.labels[static_cast<std::size_t>(i)] << '\t' << fixed4(report.raw(i));
        for (Eigen::Index s = 0; s < report.embedded.cols(); ++s) {
            out << '\t' << fixed4(report.embedded(i, s));
        }
        for (auto cls : report.classification[static_cast<std::size_t>(i)]) {
            out << '\t' << to_string(cls);
        }
        out << '\n';
    }

    out << "weightedAve\t" << fixed4(report.raw_weighted_average);
    for (Eigen::Index s = 0; s < report.embedded_weighted_average.size(); ++s) {
        out << '\t' << fixed4(report.embedded_weighted_average(s));
    }
    out << '\n';
    out << "cols&rows\t" << fixed4(report.total);
    for (Eigen::Index s = 0; s < report.cumulative_deltas.size(); ++s) {
        out << '\t' << fixed4(report.cumulative_deltas(s));
    }
    out << '\n';

    out << "c1\tNA";
    for (const auto& c : report.constants) out << '\t' << fixed4(c.c1);
    out << '\n';
    if (report.method == Method::TCA) {
        out << "c2\tNA";
        for (const auto& c : report.constants) {
            out << '\t' << fixed4(c.c2.value_or(std::numeric_limits<double>::quiet_NaN()));
        }
        out << '\n';
    }
    if (bounds) {
        out << "bounds\tlower=" << bounds->lower << "\tupper=" << bounds->upper
            << "\tpoint_estimate=" << bounds->point_estimate
            << "\tT=" << fixed4(bounds->total_dispersion)
            << "\treached=" << (bounds->threshold_reached ? "yes" : "no") << '\n';
    }
    return out.str();
}

Json json_report(const DistortionReport& report,
                 const std::optional<IntrinsicDimensionBounds>& bounds) {
    Json doc;
    doc["method"] = to_string(report.method);
    doc["axis"] = to_string(report.axis);
    doc["dims"] = report.dims;
    doc["rank"] = report.rank;
    doc["rel_tol"] = report.rel_tol;
    doc["total"] = report.total;

    Json points = Json::array();
    for (Eigen::Index i = 0; i < report.raw.size(); ++i) {
        const auto slot = static_cast<std::size_t>(i);
        Json point;
        point["label"] = report.labels[slot];
        point["raw"] = report.raw(i);
        Json embedded = Json::array();
        for (Eigen::Index s = 0; s < report.embedded.cols(); ++s) embedded.push_back(report.embedded(i, s));
        point["embedded"] = std::move(embedded);
        Json cls = Json::array();
        for (auto c : report.classification[slot]) cls.push_back(to_string(c));
        point["classification"] = std::move(cls);
        Json admissible = Json::array();
        for (bool ok : report.admissible[slot]) admissible.push_back(ok);
        point["admissible"] = std::move(admissible);
        points.push_back(std::move(point));
    }
    doc["points"] = std::move(points);

    Json wavg;
    wavg["raw"] = report.raw_weighted_average;
    wavg["embedded"] = std::vector<double>(report.embedded_weighted_average.begin(),
                                           report.embedded_weighted_average.end());
    doc["weighted_average"] = std::move(wavg);
    doc["deltas"] = std::vector<double>(report.cumulative_deltas.begin(), report.cumulative_deltas.end());

    Json constants = Json::array();
    for (std::size_t s = 0; s < report.constants.size(); ++s) {
        Json c;
        c["d"] = report.dims[s];
        c["c1"] = number_or_null(report.constants[s].c1);
        c["c2"] = report.constants[s].c2 ? number_or_null(*report.constants[s].c2) : Json(nullptr);
        constants.push_back(std::move(c));
    }
    doc["constants"] = std::move(constants);

    if (bounds) {
        Json b;
        b["lower"] = bounds->lower;
        b["upper"] = bounds->upper;
        b["point_estimate"] = bounds->point_estimate;
        b["total_dispersion"] = bounds->total_dispersion;
        b["cumulative_deltas"] = std::vector<double>(bounds->cumulative_deltas.begin(),
                                                     bounds->cumulative_deltas.end());
        b["threshold_reached"] = bounds->threshold_reached;
        doc["bounds"] = std::move(b);
    } else {
        doc["bounds"] = nullptr;
    }
    return doc;
}

}  // namespace

std::string emit_report(const DistortionReport& report,
                        const std::optional<IntrinsicDimensionBounds>& bounds,
                        ReportFormat format) {
    if (report.dims.empty()) throw InputError("report has no embedding dimensions");
    switch (format) {
        case ReportFormat::Tsv: return tsv_report(report, bounds);
        case ReportFormat::Json: return json_report(report, bounds).dump(2) + "\n";
    }
    throw InputError("unsupported report format");
}

ParsedReport parse_report_json(const std::string& document) {
    Json doc;
    try {
        doc = Json::parse(document);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid report JSON: ") + e.what());
    }
    try {
        ParsedReport parsed;
        DistortionReport& r = parsed.report;
        const std::string method = doc.at("method").get<std::string>();
        if (method != "CA" && method != "TCA") throw InputError("unknown method '" + method + "'");
        r.method = method == "CA" ? Method::CA : Method::TCA;
        const std::string axis = doc.at("axis").get<std::string>();
        if (axis != "rows" && axis != "cols") throw InputError("unknown axis '" + axis + "'");
        r.axis = axis == "rows" ? Axis::Rows : Axis::Cols;
        r.dims = doc.at("dims").get<std::vector<Eigen::Index>>();
        r.rank = doc.at("rank").get<Eigen::Index>();
        r.rel_tol = doc.at("rel_tol").get<double>();
        r.total = doc.at("total").get<double>();

        const Json& points = doc.at("points");
        const auto n = static_cast<Eigen::Index>(points.size());
        const auto m = static_cast<Eigen::Index>(r.dims.size());
        r.raw.resize(n);
        r.embedded.resize(n, m);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Json& p = points.at(static_cast<std::size_t>(i));
            r.labels.push_back(p.at("label").get<std::string>());
            r.raw(i) = p.at("raw").get<double>();
            const auto emb = p.at("embedded").get<std::vector<double>>();
            if (static_cast<Eigen::Index>(emb.size()) != m) throw InputError("embedded length mismatch");
            for (Eigen::Index s = 0; s < m; ++s) r.embedded(i, s) = emb[static_cast<std::size_t>(s)];
            std::vector<Distortion> cls;
            for (const auto& c : p.at("classification")) cls.push_back(distortion_from(c.get<std::string>()));
            r.classification.push_back(std::move(cls));
            r.admissible.push_back(p.at("admissible").get<std::vector<bool>>());
        }
        r.raw_weighted_average = doc.at("weighted_average").at("raw").get<double>();
        const auto wavg = doc.at("weighted_average").at("embedded").get<std::vector<double>>();
        r.embedded_weighted_average = Eigen::Map<const Vector>(wavg.data(), static_cast<Eigen::Index>(wavg.size()));
        const auto deltas = doc.at("deltas").get<std::vector<double>>();
        r.cumulative_deltas = Eigen::Map<const Vector>(deltas.data(), static_cast<Eigen::Index>(deltas.size()));
        for (const auto& c : doc.at("constants")) {
            DistortionConstants k;
            k.c1 = number_from(c.at("c1"));
            if (r.method == Method::TCA) k.c2 = number_from(c.at("c2"));
            r.constants.push_back(k);
        }

        const Json& b = doc.at("bounds");
        if (!b.is_null()) {
            IntrinsicDimensionBounds bounds;
            bounds.lower = b.at("lower").get<Eigen::Index>();
            bounds.upper = b.at("upper").get<Eigen::Index>();
            bounds.point_estimate = b.at("point_estimate").get<Eigen::Index>();
            bounds.total_dispersion = b.at("total_dispersion").get<double>();
            const auto cum = b.at("cumulative_deltas").get<std::vector<double>>();
            bounds.cumulative_deltas = Eigen::Map<const Vector>(cum.data(), static_cast<Eigen::Index>(cum.size()));
            bounds.threshold_reached = b.at("threshold_reached").get<bool>();
            parsed.bounds = std::move(bounds);
        }
        return parsed;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed report JSON: ") + e.what());
    }
}

namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string emit_map(const FactorDecomposition& dec, const std::vector<std::string>& row_labels,
                     const std::vector<std::string>& col_labels,
                     std::pair<Eigen::Index, Eigen::Index> axes) {
    const auto [ax, ay] = axes;
    if (ax < 1 || ay < 1 || ax > dec.k || ay > dec.k) {
        throw InputError("map axes (" + std::to_string(ax) + "," + std::to_string(ay) +
                         ") outside the " + std::to_string(dec.k) + " available axes");
    }
    if (static_cast<Eigen::Index>(row_labels.size()) != dec.row_scores.rows() ||
        static_cast<Eigen::Index>(col_labels.size()) != dec.col_scores.rows()) {
        throw InputError("map labels do not match the decomposition");
    }

    constexpr double width = 800.0;
    constexpr double height = 800.0;
    constexpr double margin = 70.0;

    const auto x_of = [&](const Matrix& m) { return m.col(ax - 1); };
    const auto y_of = [&](const Matrix& m) { return m.col(ay - 1); };
    double xmin = std::min({0.0, x_of(dec.row_scores).minCoeff(), x_of(dec.col_scores).minCoeff()});
    double xmax = std::max({0.0, x_of(dec.row_scores).maxCoeff(), x_of(dec.col_scores).maxCoeff()});
    double ymin = std::min({0.0, y_of(dec.row_scores).minCoeff(), y_of(dec.col_scores).minCoeff()});
    double ymax = std::max({0.0, y_of(dec.row_scores).maxCoeff(), y_of(dec.col_scores).maxCoeff()});
    const double xpad = 0.05 * std::max(xmax - xmin, 1e-12);
    const double ypad = 0.05 * std::max(ymax - ymin, 1e-12);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;
    // One scale for both axes so map distances are not distorted further.
    const double scale = std::min((width - 2 * margin) / (xmax - xmin),
                                  (height - 2 * margin) / (ymax - ymin));
    const double x0 = margin + ((width - 2 * margin) - scale * (xmax - xmin)) / 2.0;
    const double y0 = margin + ((height - 2 * margin) - scale * (ymax - ymin)) / 2.0;
    const auto px = [&](double x) { return fixed(x0 + scale * (x - xmin), 2); };
    const auto py = [&](double y) { return fixed(y0 + scale * (ymax - y), 2); };

    const bool ca = dec.method == Method::CA;
    const auto caption = [&](Eigen::Index a) {
        const double delta = dec.deltas(a - 1);
        return "Axis " + std::to_string(a) + (ca ? " (inertia " + fixed(delta * delta, 4) + ")"
                                                 : " (dispersion " + fixed(delta, 4) + ")");
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"18\">"
        << to_string(dec.method) << " map</text>\n";

    svg << "<g stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4,3\">\n"
        << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(0.0) << "\" x2=\"" << px(xmax)
        << "\" y2=\"" << py(0.0) << "\"/>\n"
        << "<line x1=\"" << px(0.0) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(0.0)
        << "\" y2=\"" << py(ymax) << "\"/>\n"
        << "</g>\n";
    svg << "<text x=\"" << width - margin << "\" y=\"" << height - 20
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(caption(ax)) << "</text>\n";
    svg << "<text x=\"20\" y=\"" << margin - 10
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(caption(ay)) << "</text>\n";

    svg << "<g id=\"rows\" fill=\"#1f4e9c\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (Eigen::Index i = 0; i < dec.row_scores.rows(); ++i) {
        const double x = dec.row_scores(i, ax - 1);
        const double y = dec.row_scores(i, ay - 1);
        svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"4\"/>"
            << "<text x=\"" << fixed(x0 + scale * (x - xmin) + 6, 2) << "\" y=\""
            << fixed(y0 + scale * (ymax - y) - 6, 2) << "\">"
            << xml_escape(row_labels[static_cast<std::size_t>(i)]) << "</text>\n";
    }
    svg << "</g>\n";

    svg << "<g id=\"cols\" fill=\"#b22222\" font-family=\"sans-serif\" font-size=\"12\" "
           "font-style=\"italic\">\n";
    for (Eigen::Index j = 0; j < dec.col_scores.rows(); ++j) {
        const double cx = x0 + scale * (dec.col_scores(j, ax - 1) - xmin);
        const double cy = y0 + scale * (ymax - dec.col_scores(j, ay - 1));
        svg << "<polygon points=\"" << fixed(cx, 2) << ',' << fixed(cy - 5, 2) << ' '
            << fixed(cx - 5, 2) << ',' << fixed(cy + 4, 2) << ' ' << fixed(cx + 5, 2) << ','
            << fixed(cy + 4, 2) << "\"/>"
            << "<text x=\"" << fixed(cx + 6, 2) << "\" y=\"" << fixed(cy + 14, 2) << "\">"
            << xml_escape(col_labels[static_cast<std::size_t>(j)]) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace cadistort
