#include "medsil/dissim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace medsil {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view token) {
    token = trim(token);
    if (token.empty()) {
        return std::nullopt;
    }
    if (token.front() == '+') {
        token.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::optional<MetricId> parse_metric(std::string_view name) {
    if (name == "euclidean") return MetricId::euclidean;
    if (name == "sqeuclidean" || name == "squared-euclidean") return MetricId::squared_euclidean;
    if (name == "manhattan") return MetricId::manhattan;
    if (name == "cosine" || name == "cosine-distance") return MetricId::cosine;
    if (name == "precomputed") return MetricId::precomputed;
    return std::nullopt;
}

std::string_view metric_name(MetricId metric) {
    switch (metric) {
        case MetricId::euclidean: return "euclidean";
        case MetricId::squared_euclidean: return "squared-euclidean";
        case MetricId::manhattan: return "manhattan";
        case MetricId::cosine: return "cosine-distance";
        case MetricId::precomputed: return "precomputed";
    }
    return "unknown";
}

double point_distance(MetricId metric, const double* a, const double* b, std::size_t dim) {
    switch (metric) {
        case MetricId::euclidean:
        case MetricId::squared_euclidean: {
            double sum = 0.0;
            for (std::size_t t = 0; t < dim; ++t) {
                const double diff = a[t] - b[t];
                sum += diff * diff;
            }
            return metric == MetricId::euclidean ? std::sqrt(sum) : sum;
        }
        case MetricId::manhattan: {
            double sum = 0.0;
            for (std::size_t t = 0; t < dim; ++t) {
                sum += std::abs(a[t] - b[t]);
            }
            return sum;
        }
        case MetricId::cosine: {
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (std::size_t t = 0; t < dim; ++t) {
                dot += a[t] * b[t];
                na += a[t] * a[t];
                nb += b[t] * b[t];
            }
            if (na == 0.0 || nb == 0.0) {
                return 1.0;
            }
            // rounding can push the similarity slightly outside [-1, 1]
            const double sim = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
            return 1.0 - sim;
        }
        case MetricId::precomputed: break;
    }
    throw std::invalid_argument("point_distance: metric 'precomputed' has no point formula");
}

Table read_table(std::istream& in) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split(line);
        std::vector<double> row;
        row.reserve(cells.size());
        bool numeric = true;
        for (const auto cell : cells) {
            const auto v = parse_number(cell);
            if (!v) {
                numeric = false;
                break;
            }
            row.push_back(*v);
        }
        if (!numeric) {
            if (first_row) {
                for (const auto cell : cells) {
                    table.header.emplace_back(trim(cell));
                }
                first_row = false;
                continue;
            }
            throw InputError("line " + std::to_string(line_no) + ": non-numeric cell");
        }
        first_row = false;
        if (table.rows == 0) {
            table.cols = row.size();
        } else if (row.size() != table.cols) {
            throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.cols) +
                             " columns, found " + std::to_string(row.size()));
        }
        table.values.insert(table.values.end(), row.begin(), row.end());
        ++table.rows;
    }
    if (!table.header.empty() && table.rows > 0 && table.header.size() != table.cols) {
        throw InputError("header has " + std::to_string(table.header.size()) + " columns, data has " +
                         std::to_string(table.cols));
    }
    return table;
}

Table read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open '" + path + "'");
    }
    return read_table(in);
}

Dissimilarity Dissimilarity::from_matrix(std::size_t n, std::vector<double> values) {
    if (n < 2) {
        throw InputError("dissimilarity matrix needs at least 2 objects");
    }
    if (values.size() != n * n) {
        throw InputError("dissimilarity matrix is not square");
    }
    Dissimilarity d;
    d.n_ = n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values[i * n + j];
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw InputError("dissimilarity (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") is negative or not finite");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        values[i * n + i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double& upper = values[i * n + j];
            double& lower = values[j * n + i];
            if (upper != lower) {
                const double mean = 0.5 * (upper + lower);
                upper = mean;
                lower = mean;
                ++d.asymmetric_pairs_;
            }
        }
    }
    d.matrix_ = std::move(values);
    return d;
}

Dissimilarity Dissimilarity::from_points(std::size_t n, std::size_t dim, std::vector<double> coords, MetricId metric,
                                         Storage storage) {
    if (metric == MetricId::precomputed) {
        throw std::invalid_argument("from_points: metric must not be 'precomputed'");
    }
    if (n < 2) {
        throw InputError("need at least 2 points");
    }
    if (dim == 0 || coords.size() != n * dim) {
        throw InputError("point coordinates do not form an n x dim table");
    }
    Dissimilarity d;
    d.n_ = n;
    d.dim_ = dim;
    d.metric_ = metric;
    d.coords_ = std::move(coords);
    if (storage == Storage::dense) {
        d.matrix_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = point_distance(metric, d.coords_.data() + i * dim, d.coords_.data() + j * dim, dim);
                d.matrix_[i * n + j] = v;
                d.matrix_[j * n + i] = v;
            }
        }
        d.coords_.clear();
        d.coords_.shrink_to_fit();
    }
    return d;
}

Dissimilarity Dissimilarity::from_points(const std::vector<std::vector<double>>& points, MetricId metric,
                                         Storage storage) {
    if (points.empty()) {
        throw InputError("no points given");
    }
    const std::size_t dim = points.front().size();
    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw InputError("ragged point rows");
        }
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return from_points(points.size(), dim, std::move(coords), metric, storage);
}

double Dissimilarity::dist(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) {
        throw std::out_of_range("dissimilarity index out of range");
    }
    return (*this)(i, j);
}

Dissimilarity Dissimilarity::scaled(double factor) const {
    if (!(factor > 0.0)) {
        throw std::invalid_argument("scale factor must be positive");
    }
    Dissimilarity d;
    d.n_ = n_;
    d.metric_ = MetricId::precomputed;
    d.matrix_ = to_matrix();
    for (auto& v : d.matrix_) {
        v *= factor;
    }
    return d;
}

Dissimilarity Dissimilarity::subset(const std::vector<std::size_t>& idx) const {
    const std::size_t m = idx.size();
    std::vector<double> values(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            values[a * m + b] = dist(idx[a], idx[b]);
        }
    }
    return from_matrix(m, std::move(values));
}

std::vector<double> Dissimilarity::to_matrix() const {
    if (is_dense()) {
        return matrix_;
    }
    std::vector<double> values(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            values[i * n_ + j] = (*this)(i, j);
        }
    }
    return values;
}

Dissimilarity load_matrix(const Table& table) {
    if (table.rows != table.cols) {
        throw InputError("precomputed matrix is not square (" + std::to_string(table.rows) + "x" +
                         std::to_string(table.cols) + ")");
    }
    return Dissimilarity::from_matrix(table.rows, table.values);
}

Dissimilarity load_matrix(std::istream& in) { return load_matrix(read_table(in)); }

Dissimilarity load_points(const Table& table, MetricId metric, Storage storage) {
    return Dissimilarity::from_points(table.rows, table.cols, table.values, metric, storage);
}

}  // namespace medsil
