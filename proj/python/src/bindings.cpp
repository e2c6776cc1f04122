#include "cadistort/ca.hpp"
#include "cadistort/distortion.hpp"
#include "cadistort/errors.hpp"
#include "cadistort/report.hpp"
#include "cadistort/tca.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cadistort;

namespace {

std::optional<char> parse_delimiter(const std::optional<std::string>& name) {
    if (!name || *name == "auto") return std::nullopt;
    if (*name == "tab" || *name == "\t") return '\t';
    if (name->size() != 1) throw InputError("delimiter must be one character, 'tab' or 'auto'");
    return (*name)[0];
}

ReportFormat parse_format(const std::string& name) {
    if (name == "tsv") return ReportFormat::Tsv;
    if (name == "json") return ReportFormat::Json;
    throw InputError("format must be 'tsv' or 'json'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Correspondence and taxicab correspondence analysis with distortion reports";

    auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    (void)input_error;

    py::enum_<Axis>(m, "Axis").value("ROWS", Axis::Rows).value("COLS", Axis::Cols);
    py::enum_<Method>(m, "Method").value("CA", Method::CA).value("TCA", Method::TCA);
    py::enum_<Distortion>(m, "Distortion")
        .value("CONTRACTION", Distortion::Contraction)
        .value("ISOMETRY", Distortion::Isometry)
        .value("STRETCHING", Distortion::Stretching);
    py::enum_<TsvdStrategy>(m, "TsvdStrategy")
        .value("AUTO", TsvdStrategy::Auto)
        .value("EXHAUSTIVE", TsvdStrategy::Exhaustive)
        .value("ITERATIVE", TsvdStrategy::Iterative);

    py::class_<ContingencyTable>(m, "ContingencyTable")
        .def(py::init<std::vector<std::string>, std::vector<std::string>, Matrix>(), py::arg("row_labels"),
             py::arg("col_labels"), py::arg("counts"))
        .def_property_readonly("row_labels", &ContingencyTable::row_labels)
        .def_property_readonly("col_labels", &ContingencyTable::col_labels)
        .def_property_readonly("counts", &ContingencyTable::counts)
        .def_property_readonly("total", &ContingencyTable::total)
        .def_property_readonly("shape", [](const ContingencyTable& t) { return py::make_tuple(t.rows(), t.cols()); });

    m.def(
        "load_table",
        [](const std::string& path, std::optional<std::string> delimiter, bool drop_empty) {
            LoadOptions options;
            options.delimiter = parse_delimiter(delimiter);
            options.drop_empty = drop_empty;
            return load_table_file(path, options);
        },
        py::arg("path"), py::arg("delimiter") = py::none(), py::arg("drop_empty") = false);
    m.def(
        "parse_table",
        [](const std::string& text, std::optional<std::string> delimiter, bool drop_empty) {
            LoadOptions options;
            options.delimiter = parse_delimiter(delimiter);
            options.drop_empty = drop_empty;
            std::istringstream in(text);
            return load_table(in, options);
        },
        py::arg("text"), py::arg("delimiter") = py::none(), py::arg("drop_empty") = false);
    m.def("sparsity", &sparsity, py::arg("table"));

    py::class_<CorrespondenceModel>(m, "CorrespondenceModel")
        .def_readonly("P", &CorrespondenceModel::P)
        .def_readonly("r", &CorrespondenceModel::r)
        .def_readonly("c", &CorrespondenceModel::c)
        .def_readonly("D", &CorrespondenceModel::D)
        .def_readonly("delta_index", &CorrespondenceModel::delta_index);
    m.def("build_model", &build_model, py::arg("table"));
    m.def("numerical_rank", py::overload_cast<const CorrespondenceModel&>(&numerical_rank), py::arg("model"));

    py::class_<FactorDecomposition>(m, "FactorDecomposition")
        .def_readonly("method", &FactorDecomposition::method)
        .def_readonly("k", &FactorDecomposition::k)
        .def_readonly("deltas", &FactorDecomposition::deltas)
        .def_readonly("row_scores", &FactorDecomposition::row_scores)
        .def_readonly("col_scores", &FactorDecomposition::col_scores)
        .def_readonly("rank", &FactorDecomposition::rank)
        .def_readonly("warnings", &FactorDecomposition::warnings);

    m.def("ca_decompose", &ca_decompose, py::arg("model"), py::arg("k") = py::none());
    m.def(
        "tca_decompose",
        [](const CorrespondenceModel& model, AxisCount k, TsvdStrategy strategy, int restarts, std::uint64_t seed) {
            TcaOptions options;
            options.strategy = strategy;
            options.restarts = restarts;
            options.seed = seed;
            return tca_decompose(model, k, options);
        },
        py::arg("model"), py::arg("k") = py::none(), py::arg("strategy") = TsvdStrategy::Auto,
        py::arg("restarts") = 20, py::arg("seed") = 0);
    m.def("reconstruct_association", &reconstruct_association, py::arg("dec"), py::arg("axes"));

    m.def("benzecri_distance", &benzecri_distance, py::arg("model"), py::arg("axis"), py::arg("index"));
    m.def("taxicab_distance", &taxicab_distance, py::arg("model"), py::arg("axis"), py::arg("index"));
    m.def("ca_total_inertia", &ca_total_inertia, py::arg("model"));
    m.def("tca_total_dispersion", &tca_total_dispersion, py::arg("model"));
    m.def("embedded_sq_distance", &embedded_sq_distance, py::arg("dec"), py::arg("axis"), py::arg("index"),
          py::arg("d"));
    m.def("embedded_l1_distance", &embedded_l1_distance, py::arg("dec"), py::arg("axis"), py::arg("index"),
          py::arg("d"));

    m.def("classify", &classify, py::arg("raw"), py::arg("embedded"), py::arg("rel_tol") = kDefaultIsometryTolerance);

    py::class_<DistortionConstants>(m, "DistortionConstants")
        .def_readonly("c1", &DistortionConstants::c1)
        .def_readonly("c2", &DistortionConstants::c2);
    py::class_<DistortionReport>(m, "DistortionReport")
        .def_readonly("method", &DistortionReport::method)
        .def_readonly("axis", &DistortionReport::axis)
        .def_readonly("dims", &DistortionReport::dims)
        .def_readonly("labels", &DistortionReport::labels)
        .def_readonly("raw", &DistortionReport::raw)
        .def_readonly("embedded", &DistortionReport::embedded)
        .def_readonly("classification", &DistortionReport::classification)
        .def_readonly("admissible", &DistortionReport::admissible)
        .def_readonly("raw_weighted_average", &DistortionReport::raw_weighted_average)
        .def_readonly("total", &DistortionReport::total)
        .def_readonly("embedded_weighted_average", &DistortionReport::embedded_weighted_average)
        .def_readonly("cumulative_deltas", &DistortionReport::cumulative_deltas)
        .def_readonly("constants", &DistortionReport::constants)
        .def_readonly("rank", &DistortionReport::rank)
        .def_readonly("rel_tol", &DistortionReport::rel_tol);
    m.def("distortion_report", &distortion_report, py::arg("model"), py::arg("dec"), py::arg("axis"),
          py::arg("dims"), py::arg("labels") = std::vector<std::string>{},
          py::arg("rel_tol") = kDefaultIsometryTolerance);

    py::class_<IntrinsicDimensionBounds>(m, "IntrinsicDimensionBounds")
        .def_readonly("lower", &IntrinsicDimensionBounds::lower)
        .def_readonly("upper", &IntrinsicDimensionBounds::upper)
        .def_readonly("total_dispersion", &IntrinsicDimensionBounds::total_dispersion)
        .def_readonly("cumulative_deltas", &IntrinsicDimensionBounds::cumulative_deltas)
        .def_readonly("point_estimate", &IntrinsicDimensionBounds::point_estimate)
        .def_readonly("threshold_reached", &IntrinsicDimensionBounds::threshold_reached);
    m.def("intrinsic_dimension_bounds", &intrinsic_dimension_bounds, py::arg("deltas"),
          py::arg("total_dispersion"));

    m.def(
        "emit_report",
        [](const DistortionReport& report, const std::optional<IntrinsicDimensionBounds>& bounds,
           const std::string& format) { return emit_report(report, bounds, parse_format(format)); },
        py::arg("report"), py::arg("bounds") = py::none(), py::arg("format") = "tsv");
    m.def("emit_map", &emit_map, py::arg("dec"), py::arg("row_labels"), py::arg("col_labels"),
          py::arg("axes") = std::pair<Eigen::Index, Eigen::Index>{1, 2});
}
