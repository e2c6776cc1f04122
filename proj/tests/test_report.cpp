#include "cadistort/analysis.hpp"
#include "cadistort/ca.hpp"
#include "cadistort/errors.hpp"
#include "cadistort/report.hpp"
#include "cadistort/tca.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cadistort;

namespace {

std::vector<Eigen::Index> all_dims(const FactorDecomposition& dec, Eigen::Index cap = 3) {
    std::vector<Eigen::Index> dims;
    for (Eigen::Index d = 1; d <= std::min(cap, dec.k); ++d) dims.push_back(d);
    return dims;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "cadistort_test_report";
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path write_csv(const std::string& name, const std::string& content) {
    const auto path = scratch_dir() / name;
    std::ofstream(path) << content;
    return path;
}

std::string table_csv(const ContingencyTable& table) {
    std::ostringstream out;
    out << "table";
    for (const auto& c : table.col_labels()) out << ',' << c;
    out << '\n';
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        out << table.row_labels()[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < table.cols(); ++j) out << ',' << table.counts()(i, j);
        out << '\n';
    }
    return out.str();
}

}  // namespace

TEST_CASE("JSON reports round-trip exactly") {
    for (const auto& table : testing::random_suite(51, 25)) {
        const auto model = build_model(table);
        for (Method method : {Method::CA, Method::TCA}) {
            const auto dec = method == Method::CA ? ca_decompose(model) : tca_decompose(model);
            const auto report = distortion_report(model, dec, Axis::Cols, all_dims(dec), table.col_labels());
            std::optional<IntrinsicDimensionBounds> bounds;
            if (method == Method::TCA) bounds = intrinsic_dimension_bounds(dec.deltas, report.total);

            const auto parsed = parse_report_json(emit_report(report, bounds, ReportFormat::Json));
            const auto& back = parsed.report;
            CHECK(back.method == report.method);
            CHECK(back.axis == report.axis);
            CHECK(back.dims == report.dims);
            CHECK(back.labels == report.labels);
            CHECK(back.raw == report.raw);
            CHECK(back.embedded == report.embedded);
            CHECK(back.classification == report.classification);
            CHECK(back.admissible == report.admissible);
            CHECK(back.raw_weighted_average == report.raw_weighted_average);
            CHECK(back.total == report.total);
            CHECK(back.embedded_weighted_average == report.embedded_weighted_average);
            CHECK(back.cumulative_deltas == report.cumulative_deltas);
            REQUIRE(back.constants.size() == report.constants.size());
            for (std::size_t s = 0; s < report.constants.size(); ++s) {
                CHECK(back.constants[s].c1 == report.constants[s].c1);
                CHECK(back.constants[s].c2 == report.constants[s].c2);
            }
            CHECK(parsed.bounds.has_value() == bounds.has_value());
            if (bounds) {
                CHECK(parsed.bounds->lower == bounds->lower);
                CHECK(parsed.bounds->upper == bounds->upper);
                CHECK(parsed.bounds->total_dispersion == bounds->total_dispersion);
                CHECK(parsed.bounds->cumulative_deltas == bounds->cumulative_deltas);
            }
        }
    }
}

TEST_CASE("TSV and JSON carry the same values") {
    std::mt19937_64 gen(4);
    const auto table = testing::random_table(gen, 7, 6);
    const auto model = build_model(table);
    const auto dec = tca_decompose(model);
    const auto report = distortion_report(model, dec, Axis::Rows, all_dims(dec), table.row_labels());
    const auto bounds = intrinsic_dimension_bounds(dec.deltas, report.total);
    const std::string tsv = emit_report(report, bounds, ReportFormat::Tsv);
    const auto json = parse_report_json(emit_report(report, bounds, ReportFormat::Json)).report;

    std::istringstream lines(tsv);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# method=TCA axis=rows", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "label\traw\tl1_d1\tl1_d2\tl1_d3\tclass_d1\tclass_d2\tclass_d3");
    const auto round4 = [](double x) { return std::round(x * 1e4) / 1e4; };
    for (Eigen::Index i = 0; i < json.raw.size(); ++i) {
        std::getline(lines, line);
        const auto fields = split(line, '\t');
        REQUIRE(fields.size() == 8);
        CHECK(fields[0] == json.labels[static_cast<std::size_t>(i)]);
        CHECK(std::stod(fields[1]) == doctest::Approx(round4(json.raw(i))).epsilon(1e-12));
        for (int s = 0; s < 3; ++s) {
            CHECK(std::stod(fields[2 + static_cast<std::size_t>(s)]) ==
                  doctest::Approx(round4(json.embedded(i, s))).epsilon(1e-12));
            CHECK(fields[5 + static_cast<std::size_t>(s)] ==
                  to_string(json.classification[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]));
        }
    }
    std::getline(lines, line);
    auto footer = split(line, '\t');
    CHECK(footer[0] == "weightedAve");
    CHECK(std::stod(footer[1]) == doctest::Approx(round4(json.raw_weighted_average)));
    std::getline(lines, line);
    footer = split(line, '\t');
    CHECK(footer[0] == "cols&rows");
    for (int s = 0; s < 3; ++s) {
        CHECK(std::stod(footer[2 + static_cast<std::size_t>(s)]) ==
              doctest::Approx(round4(json.cumulative_deltas(s))));
    }
    CHECK(tsv.find("bounds\tlower=") != std::string::npos);
}

TEST_CASE("emit_report and parse_report_json errors") {
    DistortionReport empty;
    CHECK_THROWS_AS(emit_report(empty, std::nullopt, ReportFormat::Tsv), InputError);
    CHECK_THROWS_AS(parse_report_json("{not json"), InputError);
    CHECK_THROWS_AS(parse_report_json("{\"method\":\"PCA\"}"), InputError);
    CHECK_THROWS_AS(parse_report_json("{\"method\":\"CA\"}"), InputError);
}

TEST_CASE("SVG factor map") {
    std::mt19937_64 gen(10);
    const auto table = testing::random_table(gen, 10, 9);
    const auto model = build_model(table);
    const auto dec = tca_decompose(model, 3);
    const std::string svg = emit_map(dec, table.row_labels(), table.col_labels(), {1, 2});
    const auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
        return n;
    };
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count("<circle") == 10);
    CHECK(count("<polygon") == 9);
    CHECK(count("<text") == 10 + 9 + 3);
    CHECK(svg.find("Axis 1 (dispersion") != std::string::npos);
    CHECK(svg == emit_map(dec, table.row_labels(), table.col_labels(), {1, 2}));
    CHECK(svg != emit_map(dec, table.row_labels(), table.col_labels(), {1, 3}));

    CHECK_THROWS_AS(emit_map(dec, table.row_labels(), table.col_labels(), {1, 4}), InputError);
    CHECK_THROWS_AS(emit_map(dec, table.row_labels(), table.col_labels(), {0, 1}), InputError);
    CHECK_THROWS_AS(emit_map(dec, {"a"}, table.col_labels(), {1, 2}), InputError);

    Matrix counts(2, 2);
    counts << 2, 0, 0, 2;
    const ContingencyTable tiny({"r&1", "r<2"}, {"x", "y"}, counts);
    const auto one_axis = ca_decompose(build_model(tiny));
    CHECK_THROWS_AS(emit_map(one_axis, tiny.row_labels(), tiny.col_labels(), {1, 2}), InputError);
    const std::string escaped = emit_map(one_axis, tiny.row_labels(), tiny.col_labels(), {1, 1});
    CHECK(escaped.find("r&amp;1") != std::string::npos);
    CHECK(escaped.find("r&lt;2") != std::string::npos);
}

TEST_CASE("run: exit statuses") {
    std::ostringstream out, err;
    AnalysisConfig config;
    config.input_path = write_csv("bad.csv", "A,x,y\nr1,1,-2\nr2,3,4\n").string();
    CHECK(run(config, out, err) == kExitInput);
    CHECK(err.str().find("negative") != std::string::npos);

    config.input_path = (scratch_dir() / "missing.csv").string();
    CHECK(run(config, out, err) == kExitInput);

    config.input_path = write_csv("zero_row.csv", "A,x,y,z\nr1,1,0,2\nr2,0,0,0\nr3,3,1,1\n").string();
    CHECK(run(config, out, err) == kExitInput);
    config.drop_empty = true;
    err.str("");
    CHECK(run(config, out, err) == kExitOk);
    CHECK(err.str().find("dropped empty row 'r2'") != std::string::npos);

    config.dims = 0;
    CHECK(run(config, out, err) == kExitInput);
}

TEST_CASE("run: reports, maps and determinism") {
    std::mt19937_64 gen(12);
    const auto table = testing::random_table(gen, 10, 9);
    const auto input = write_csv("random10x9.csv", table_csv(table));
    const auto map = scratch_dir() / "map.svg";

    AnalysisConfig config;
    config.input_path = input.string();
    config.method = MethodSelection::Tca;
    config.axis = AxisSelection::Rows;
    config.map_path = map.string();

    std::ostringstream out1, err1, out2, err2;
    REQUIRE(run(config, out1, err1) == kExitOk);
    const std::string svg1 = slurp(map);
    REQUIRE(run(config, out2, err2) == kExitOk);
    CHECK(out1.str() == out2.str());
    CHECK(svg1 == slurp(map));
    CHECK(out1.str().find("bounds\tlower=") != std::string::npos);
    CHECK(out1.str().find("# method=CA") == std::string::npos);

    config.format = ReportFormat::Json;
    config.method = MethodSelection::Both;
    config.axis = AxisSelection::Both;
    std::ostringstream json1, json2, err;
    REQUIRE(run(config, json1, err) == kExitOk);
    REQUIRE(run(config, json2, err) == kExitOk);
    CHECK(json1.str() == json2.str());
    CHECK(std::filesystem::exists(method_map_path(map.string(), Method::CA)));
    CHECK(std::filesystem::exists(method_map_path(map.string(), Method::TCA)));
    CHECK(method_map_path("/tmp/x/map.svg", Method::TCA) == "/tmp/x/map.tca.svg");

    config.map_axes = {1, 9};
    std::ostringstream sink;
    CHECK(run(config, sink, err) == kExitInput);
}

TEST_CASE("run: iterative strategy is deterministic for a fixed seed") {
    std::mt19937_64 gen(13);
    const auto input = write_csv("random12x11.csv", table_csv(testing::random_table(gen, 12, 11)));
    AnalysisConfig config;
    config.input_path = input.string();
    config.method = MethodSelection::Tca;
    config.tca_strategy = TsvdStrategy::Iterative;
    config.seed = 7;
    config.format = ReportFormat::Json;
    std::ostringstream a, b, err;
    REQUIRE(run(config, a, err) == kExitOk);
    REQUIRE(run(config, b, err) == kExitOk);
    CHECK(a.str() == b.str());
}
