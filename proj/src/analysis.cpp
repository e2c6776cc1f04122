#include "cadistort/analysis.hpp"

#include "cadistort/ca.hpp"
#include "cadistort/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace cadistort {

namespace {

void validate(const AnalysisConfig& config) {
    if (config.dims < 1) throw InputError("dims must be >= 1");
    if (config.restarts < 1) throw InputError("restarts must be >= 1");
    if (!(config.rel_tol > 0.0)) throw InputError("rel-tol must be positive");
    if (config.map_axes.first < 1 || config.map_axes.second < 1) {
        throw InputError("map axes are 1-based");
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + path + "'");
    file << content;
    if (!file) throw InputError("failed writing '" + path + "'");
}

std::string summary_tsv(const std::string& input, const ContingencyTable& table, double sp,
                        double inertia, double dispersion) {
    std::ostringstream out;
    out << "# input=" << std::filesystem::path(input).filename().string() << " rows=" << table.rows()
        << " cols=" << table.cols() << " n=" << table.total() << '\n';
    char buf[160];
    std::snprintf(buf, sizeof buf, "# sparsity=%.4f total_inertia=%.4f total_dispersion=%.4f\n",
                  sp, inertia, dispersion);
    out << buf;
    return out.str();
}

}  // namespace

std::string method_map_path(const std::string& map_path, Method method) {
    std::filesystem::path path(map_path);
    const std::string tag = method == Method::CA ? ".ca" : ".tca";
    path.replace_filename(path.stem().string() + tag + path.extension().string());
    return path.string();
}

int run(const AnalysisConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        LoadOptions load;
        load.delimiter = config.delimiter;
        load.drop_empty = config.drop_empty;
        LoadDiagnostics diagnostics;
        const ContingencyTable table = load_table_file(config.input_path, load, &diagnostics);
        for (const auto& label : diagnostics.dropped_rows) err << "warning: dropped empty row '" << label << "'\n";
        for (const auto& label : diagnostics.dropped_cols) err << "warning: dropped empty column '" << label << "'\n";

        const CorrespondenceModel model = build_model(table);
        const double sp = sparsity(table);
        const double inertia = ca_total_inertia(model);
        const double dispersion = tca_total_dispersion(model);

        std::vector<Method> methods;
        if (config.method != MethodSelection::Tca) methods.push_back(Method::CA);
        if (config.method != MethodSelection::Ca) methods.push_back(Method::TCA);
        std::vector<Axis> axes;
        if (config.axis != AxisSelection::Cols) axes.push_back(Axis::Rows);
        if (config.axis != AxisSelection::Rows) axes.push_back(Axis::Cols);

        std::ostringstream tsv;
        nlohmann::ordered_json doc;
        if (config.format == ReportFormat::Tsv) {
            tsv << summary_tsv(config.input_path, table, sp, inertia, dispersion);
        } else {
            doc["input"] = std::filesystem::path(config.input_path).filename().string();
            doc["rows"] = table.rows();
            doc["cols"] = table.cols();
            doc["n"] = table.total();
            doc["sparsity"] = sp;
            doc["total_inertia"] = inertia;
            doc["total_dispersion"] = dispersion;
            doc["dropped_rows"] = diagnostics.dropped_rows;
            doc["dropped_cols"] = diagnostics.dropped_cols;
            doc["reports"] = nlohmann::ordered_json::array();
        }

        const Eigen::Index axes_wanted = std::min(config.dims, numerical_rank(model));
        for (const Method method : methods) {
            FactorDecomposition dec;
            if (method == Method::CA) {
                dec = ca_decompose(model, axes_wanted);
            } else {
                TcaOptions options;
                options.strategy = config.tca_strategy;
                options.restarts = config.restarts;
                options.seed = config.seed;
                dec = tca_decompose(model, axes_wanted, options);
            }
            for (const auto& w : dec.warnings) err << "warning: " << w << '\n';
            if (dec.k < config.dims) {
                err << "warning: " << to_string(method) << " yields " << dec.k
                    << " axes, fewer than the requested " << config.dims << '\n';
            }
            if (dec.k == 0) continue;

            std::vector<Eigen::Index> dims;
            for (Eigen::Index d = 1; d <= dec.k; ++d) dims.push_back(d);
            std::optional<IntrinsicDimensionBounds> bounds;
            if (method == Method::TCA) bounds = intrinsic_dimension_bounds(dec.deltas, dispersion);

            for (const Axis axis : axes) {
                const DistortionReport report =
                    distortion_report(model, dec, axis, dims, table.labels(axis), config.rel_tol);
                const std::string text = emit_report(report, bounds, config.format);
                if (config.format == ReportFormat::Tsv) {
                    tsv << '\n' << text;
                } else {
                    doc["reports"].push_back(nlohmann::ordered_json::parse(text));
                }
            }

            if (config.map_path) {
                const std::string path = config.method == MethodSelection::Both
                                             ? method_map_path(*config.map_path, method)
                                             : *config.map_path;
                write_file(path, emit_map(dec, table.row_labels(), table.col_labels(), config.map_axes));
            }
        }

        const std::string document = config.format == ReportFormat::Tsv ? tsv.str() : doc.dump(2) + "\n";
        if (config.output_path) {
            write_file(*config.output_path, document);
        } else {
            out << document;
        }
        return kExitOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace cadistort
