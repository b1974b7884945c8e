#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace medsil {

/// Raised for malformed or inconsistent input data (ragged rows, bad cells, ...).
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class MetricId { euclidean, squared_euclidean, manhattan, cosine, precomputed };

/// Parses "euclidean", "sqeuclidean"/"squared-euclidean", "manhattan", "cosine"/"cosine-distance",
/// "precomputed". Returns nullopt for anything else.
std::optional<MetricId> parse_metric(std::string_view name);
std::string_view metric_name(MetricId metric);

/// Distance between two coordinate tuples of equal length.
/// Cosine distance is 1 - cos(a, b), and 1 when either vector is zero.
double point_distance(MetricId metric, const double* a, const double* b, std::size_t dim);

enum class Storage { dense, lazy };

/// Row-major numeric table, as read from comma-separated text.
struct Table {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;
    std::vector<std::string> header;

    const double* row(std::size_t i) const { return values.data() + i * cols; }
};

/// Reads comma-separated numeric text. The first row is treated as a header iff it
/// contains a non-numeric token; any other non-numeric cell is an error.
Table read_table(std::istream& in);
Table read_table_file(const std::string& path);

/// Symmetric, zero-diagonal, non-negative dissimilarities over n objects.
///
/// Backed either by a dense n x n matrix or by points plus a metric evaluated on demand.
/// Immutable after construction, so one instance may be shared by concurrent readers.
class Dissimilarity {
  public:
    /// Takes a row-major n x n matrix. Asymmetric pairs are replaced by their average and
    /// the diagonal is forced to 0; the number of averaged pairs is kept in asymmetric_pairs().
    static Dissimilarity from_matrix(std::size_t n, std::vector<double> values);

    /// Points are row-major with `dim` coordinates each.
    static Dissimilarity from_points(std::size_t n, std::size_t dim, std::vector<double> coords, MetricId metric,
                                     Storage storage = Storage::dense);
    static Dissimilarity from_points(const std::vector<std::vector<double>>& points, MetricId metric,
                                     Storage storage = Storage::dense);

    std::size_t size() const noexcept { return n_; }
    bool is_dense() const noexcept { return !matrix_.empty(); }
    MetricId metric() const noexcept { return metric_; }
    std::size_t asymmetric_pairs() const noexcept { return asymmetric_pairs_; }

    /// Unchecked access for inner loops.
    double operator()(std::size_t i, std::size_t j) const noexcept {
        if (!matrix_.empty()) {
            return matrix_[i * n_ + j];
        }
        if (i == j) {
            return 0.0;
        }
        return point_distance(metric_, coords_.data() + i * dim_, coords_.data() + j * dim_, dim_);
    }

    /// Bounds-checked access; throws std::out_of_range.
    double dist(std::size_t i, std::size_t j) const;

    /// Dense copy of this provider with every entry multiplied by `factor` (> 0).
    Dissimilarity scaled(double factor) const;

    /// Dense provider over the objects `idx` (in that order).
    Dissimilarity subset(const std::vector<std::size_t>& idx) const;

    /// Row-major dense matrix of all n x n values.
    std::vector<double> to_matrix() const;

  private:
    Dissimilarity() = default;

    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    MetricId metric_ = MetricId::precomputed;
    std::vector<double> matrix_;
    std::vector<double> coords_;
    std::size_t asymmetric_pairs_ = 0;
};

/// Builds a provider from a square table, see Dissimilarity::from_matrix.
Dissimilarity load_matrix(const Table& table);
Dissimilarity load_matrix(std::istream& in);

/// Builds a provider from the rows of a table used as points.
Dissimilarity load_points(const Table& table, MetricId metric, Storage storage = Storage::dense);

}  // namespace medsil
