// Command-line front end: `cadistort analyze --input table.csv ...`

#include "cadistort/analysis.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

std::optional<char> parse_delimiter(const std::string& text) {
    if (text.empty() || text == "auto") return std::nullopt;
    if (text == "tab" || text == "\\t") return '\t';
    if (text.size() == 1) return text[0];
    throw CLI::ValidationError("--delimiter", "expected one character, 'tab' or 'auto'");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cadistort;

    CLI::App app{"Correspondence analysis (CA) and taxicab CA with embedding distortion reports"};
    app.require_subcommand(1);
    CLI::App* analyze = app.add_subcommand("analyze", "Decompose a contingency table and report distortion");

    AnalysisConfig config;
    std::string delimiter = "auto";
    std::string map_axes = "1,2";
    std::string output;
    std::string map_path;

    const std::map<std::string, MethodSelection> methods{
        {"ca", MethodSelection::Ca}, {"tca", MethodSelection::Tca}, {"both", MethodSelection::Both}};
    const std::map<std::string, AxisSelection> axes{
        {"rows", AxisSelection::Rows}, {"cols", AxisSelection::Cols}, {"both", AxisSelection::Both}};
    const std::map<std::string, TsvdStrategy> strategies{{"auto", TsvdStrategy::Auto},
                                                          {"exhaustive", TsvdStrategy::Exhaustive},
                                                          {"iterative", TsvdStrategy::Iterative}};
    const std::map<std::string, ReportFormat> formats{{"tsv", ReportFormat::Tsv},
                                                      {"json", ReportFormat::Json}};

    analyze->add_option("--input", config.input_path, "Delimiter-separated contingency table")
        ->required();
    analyze->add_option("--method", config.method, "ca, tca or both")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    analyze->add_option("--dims", config.dims, "Largest embedding dimension")->check(CLI::PositiveNumber);
    analyze->add_option("--axis", config.axis, "rows, cols or both")
        ->transform(CLI::CheckedTransformer(axes, CLI::ignore_case));
    analyze->add_option("--tca-strategy", config.tca_strategy, "auto, exhaustive or iterative")
        ->transform(CLI::CheckedTransformer(strategies, CLI::ignore_case));
    analyze->add_option("--restarts", config.restarts, "Random restarts of the iterative TSVD")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--seed", config.seed, "Seed for the iterative TSVD restarts");
    analyze->add_option("--rel-tol", config.rel_tol, "Relative band treated as isometry")
        ->check(CLI::PositiveNumber);
    analyze->add_flag("--drop-empty", config.drop_empty, "Remove all-zero rows and columns");
    analyze->add_option("--delimiter", delimiter, "Field separator (default: auto-detect)");
    analyze->add_option("--format", config.format, "tsv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    analyze->add_option("--map", map_path, "Write an SVG factor map to this path");
    analyze->add_option("--map-axes", map_axes, "Axes of the map, e.g. 1,2");
    analyze->add_option("--output", output, "Write the report here instead of standard output");

    try {
        app.parse(argc, argv);
        config.delimiter = parse_delimiter(delimiter);
        const auto comma = map_axes.find(',');
        if (comma == std::string::npos) throw CLI::ValidationError("--map-axes", "expected A,B");
        config.map_axes = {std::stol(map_axes.substr(0, comma)), std::stol(map_axes.substr(comma + 1))};
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    } catch (const std::logic_error&) {
        std::cerr << "error: --map-axes expects two integers, e.g. 1,2\n";
        return kExitInput;
    }
    if (!map_path.empty()) config.map_path = map_path;
    if (!output.empty()) config.output_path = output;

    return run(config, std::cout, std::cerr);
}
