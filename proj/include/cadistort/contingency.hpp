#pragma once

#include <Eigen/Dense>

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace cadistort {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Axis { Rows, Cols };

const char* to_string(Axis axis);

inline Axis opposite(Axis axis) { return axis == Axis::Rows ? Axis::Cols : Axis::Rows; }

/// Labeled two-way table of nonnegative counts.
///
/// Construction validates: at least 2x2, unique labels on each axis,
/// finite nonnegative cells and a positive grand total. Zero margins are
/// allowed here; build_model() rejects them.
class ContingencyTable {
public:
    ContingencyTable(std::vector<std::string> row_labels,
                     std::vector<std::string> col_labels,
                     Matrix counts);

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }
    const std::vector<std::string>& labels(Axis axis) const {
        return axis == Axis::Rows ? row_labels_ : col_labels_;
    }
    const Matrix& counts() const { return counts_; }
    double total() const { return total_; }
    Eigen::Index rows() const { return counts_.rows(); }
    Eigen::Index cols() const { return counts_.cols(); }

private:
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    Matrix counts_;
    double total_ = 0.0;
};

struct LoadOptions {
    /// Field separator; auto-detected among ',', ';' and '\t' when unset.
    std::optional<char> delimiter;
    /// Remove all-zero rows/columns instead of rejecting the table.
    bool drop_empty = false;
};

struct LoadDiagnostics {
    char delimiter = ',';
    std::vector<std::string> dropped_rows;
    std::vector<std::string> dropped_cols;
};

/// Parses delimiter-separated text: a header of column labels, then one
/// line per row whose first field is the row label. The header may carry a
/// leading corner cell or not. Throws InputError on any malformed input.
ContingencyTable load_table(std::istream& source, const LoadOptions& options = {},
                            LoadDiagnostics* diagnostics = nullptr);

ContingencyTable load_table_file(const std::string& path, const LoadOptions& options = {},
                                 LoadDiagnostics* diagnostics = nullptr);

/// Fraction of zero cells.
double sparsity(const ContingencyTable& table);

/// Correspondence matrix P = N/n with its margins, the centered residual
/// D = P - r c^T and the association index Delta = D / (r c^T).
struct CorrespondenceModel {
    Matrix P;
    Vector r;
    Vector c;
    Matrix D;
    Matrix delta_index;

    Eigen::Index rows() const { return P.rows(); }
    Eigen::Index cols() const { return P.cols(); }
    const Vector& weights(Axis axis) const { return axis == Axis::Rows ? r : c; }
    Eigen::Index size(Axis axis) const { return axis == Axis::Rows ? P.rows() : P.cols(); }
};

CorrespondenceModel build_model(const ContingencyTable& table);

/// Row profile p_ij / p_i+ (over j) or column profile p_ij / p_+j (over i).
Vector profile(const CorrespondenceModel& model, Axis axis, Eigen::Index index);

/// Throws InputError unless 0 <= index < model.size(axis).
void check_index(const CorrespondenceModel& model, Axis axis, Eigen::Index index);

}  // namespace cadistort
