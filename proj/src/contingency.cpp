#include "cadistort/contingency.hpp"

#include "cadistort/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>

namespace cadistort {

const char* to_string(Axis axis) { return axis == Axis::Rows ? "rows" : "cols"; }

namespace {

void require_unique(const std::vector<std::string>& labels, const char* what) {
    std::set<std::string> seen;
    for (const auto& label : labels) {
        if (!seen.insert(label).second) {
            throw InputError(std::string("duplicate ") + what + " label '" + label + "'");
        }
    }
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

// Splits one record; double quotes group a field and "" escapes a quote.
std::vector<std::string> split_record(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char ch = line[k];
        if (quoted) {
            if (ch == '"') {
                if (k + 1 < line.size() && line[k + 1] == '"') {
                    field += '"';
                    ++k;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == delimiter) {
            fields.push_back(trim(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    if (quoted) throw InputError("unterminated quote in line: " + line);
    fields.push_back(trim(field));
    return fields;
}

char detect_delimiter(const std::string& header) {
    constexpr char candidates[] = {',', ';', '\t'};
    char best = ',';
    std::ptrdiff_t best_count = 0;
    for (char candidate : candidates) {
        const auto count = std::count(header.begin(), header.end(), candidate);
        if (count > best_count) {
            best = candidate;
            best_count = count;
        }
    }
    return best;
}

double parse_cell(const std::string& text, std::size_t line_no, std::size_t field_no) {
    const auto where = [&] {
        return " at line " + std::to_string(line_no) + ", field " + std::to_string(field_no);
    };
    if (text.empty()) throw InputError("empty cell" + where());
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(value)) {
        throw InputError("non-numeric cell '" + text + "'" + where());
    }
    if (value < 0.0) throw InputError("negative cell '" + text + "'" + where());
    return value;
}

}  // namespace

ContingencyTable::ContingencyTable(std::vector<std::string> row_labels,
                                   std::vector<std::string> col_labels, Matrix counts)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      counts_(std::move(counts)) {
    if (counts_.rows() < 2 || counts_.cols() < 2) {
        throw InputError("table must be at least 2x2, got " + std::to_string(counts_.rows()) +
                         "x" + std::to_string(counts_.cols()));
    }
    if (static_cast<Eigen::Index>(row_labels_.size()) != counts_.rows() ||
        static_cast<Eigen::Index>(col_labels_.size()) != counts_.cols()) {
        throw InputError("label count does not match table shape");
    }
    require_unique(row_labels_, "row");
    require_unique(col_labels_, "column");
    if (!counts_.allFinite() || (counts_.array() < 0.0).any()) {
        throw InputError("counts must be finite and nonnegative");
    }
    total_ = counts_.sum();
    if (!(total_ > 0.0)) throw InputError("grand total must be positive");
}

ContingencyTable load_table(std::istream& source, const LoadOptions& options,
                            LoadDiagnostics* diagnostics) {
    std::vector<std::string> lines;
    std::vector<std::size_t> line_numbers;
    {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(source, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
            if (trim(line).empty()) continue;
            lines.push_back(line);
            line_numbers.push_back(line_no);
        }
    }
    if (lines.size() < 3) throw InputError("table needs a header and at least 2 rows");

    const char delimiter = options.delimiter.value_or(detect_delimiter(lines.front()));
    std::vector<std::string> header = split_record(lines.front(), delimiter);
    const std::size_t body_width = split_record(lines[1], delimiter).size();
    if (header.size() == body_width) {
        header.erase(header.begin());  // corner cell
    } else if (header.size() + 1 != body_width) {
        throw InputError("header has " + std::to_string(header.size()) +
                         " fields but line " + std::to_string(line_numbers[1]) + " has " +
                         std::to_string(body_width));
    }

    const auto n_rows = static_cast<Eigen::Index>(lines.size() - 1);
    const auto n_cols = static_cast<Eigen::Index>(header.size());
    Matrix counts(n_rows, n_cols);
    std::vector<std::string> row_labels;
    row_labels.reserve(lines.size() - 1);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto fields = split_record(lines[k], delimiter);
        if (fields.size() != header.size() + 1) {
            throw InputError("line " + std::to_string(line_numbers[k]) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size() + 1));
        }
        row_labels.push_back(fields[0]);
        for (std::size_t j = 0; j < header.size(); ++j) {
            counts(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(j)) =
                parse_cell(fields[j + 1], line_numbers[k], j + 2);
        }
    }
    require_unique(row_labels, "row");
    require_unique(header, "column");

    const Vector row_sums = counts.rowwise().sum();
    const Vector col_sums = counts.colwise().sum();
    std::vector<Eigen::Index> keep_rows;
    std::vector<Eigen::Index> keep_cols;
    LoadDiagnostics diag;
    diag.delimiter = delimiter;
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        if (row_sums(i) > 0.0) {
            keep_rows.push_back(i);
        } else {
            diag.dropped_rows.push_back(row_labels[static_cast<std::size_t>(i)]);
        }
    }
    for (Eigen::Index j = 0; j < n_cols; ++j) {
        if (col_sums(j) > 0.0) {
            keep_cols.push_back(j);
        } else {
            diag.dropped_cols.push_back(header[static_cast<std::size_t>(j)]);
        }
    }
    if (!options.drop_empty && (!diag.dropped_rows.empty() || !diag.dropped_cols.empty())) {
        const bool is_row = !diag.dropped_rows.empty();
        throw InputError(std::string("all-zero ") + (is_row ? "row '" : "column '") +
                         (is_row ? diag.dropped_rows.front() : diag.dropped_cols.front()) +
                         "' (use drop-empty to remove empty rows/columns)");
    }

    std::vector<std::string> kept_row_labels;
    std::vector<std::string> kept_col_labels;
    for (auto i : keep_rows) kept_row_labels.push_back(row_labels[static_cast<std::size_t>(i)]);
    for (auto j : keep_cols) kept_col_labels.push_back(header[static_cast<std::size_t>(j)]);
    Matrix kept = counts(keep_rows, keep_cols);

    if (diagnostics != nullptr) *diagnostics = std::move(diag);
    return ContingencyTable(std::move(kept_row_labels), std::move(kept_col_labels),
                            std::move(kept));
}

ContingencyTable load_table_file(const std::string& path, const LoadOptions& options,
                                 LoadDiagnostics* diagnostics) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return load_table(in, options, diagnostics);
}

double sparsity(const ContingencyTable& table) {
    const auto zeros = (table.counts().array() == 0.0).count();
    return static_cast<double>(zeros) / static_cast<double>(table.counts().size());
}

CorrespondenceModel build_model(const ContingencyTable& table) {
    CorrespondenceModel model;
    model.P = table.counts() / table.total();
    model.r = model.P.rowwise().sum();
    model.c = model.P.colwise().sum().transpose();
    if ((model.r.array() <= 0.0).any() || (model.c.array() <= 0.0).any()) {
        throw InputError("table has a zero row or column margin");
    }
    model.D = model.P - model.r * model.c.transpose();
    model.delta_index =
        (model.P.array() / (model.r * model.c.transpose()).array() - 1.0).matrix();
    return model;
}

void check_index(const CorrespondenceModel& model, Axis axis, Eigen::Index index) {
    if (index < 0 || index >= model.size(axis)) {
        throw InputError(std::string(to_string(axis)) + " index " + std::to_string(index) +
                         " out of range [0, " + std::to_string(model.size(axis)) + ")");
    }
}

Vector profile(const CorrespondenceModel& model, Axis axis, Eigen::Index index) {
    check_index(model, axis, index);
    if (axis == Axis::Rows) return model.P.row(index).transpose() / model.r(index);
    return model.P.col(index) / model.c(index);
}

}  // namespace cadistort
