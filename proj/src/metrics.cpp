#include "medsil/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace medsil {

namespace {

std::vector<std::size_t> dense_ids(std::span<const int> labels, std::size_t& count) {
    // sorted label order, so relabelings that preserve order give identical tables
    std::map<int, std::size_t> ids;
    for (const int l : labels) {
        ids.emplace(l, 0);
    }
    std::size_t next = 0;
    for (auto& [label, id] : ids) {
        id = next++;
    }
    count = next;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i] = ids[labels[i]];
    }
    return out;
}

double pairs(std::size_t m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m > 0 ? m - 1 : 0); }

// Summing in sorted order makes the result independent of cluster numbering and of
// argument order (transposed tables yield the same terms).
double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (const double t : terms) {
        sum += t;
    }
    return sum;
}

double entropy(std::span<const std::size_t> sums, double n) {
    std::vector<double> terms;
    for (const auto s : sums) {
        if (s > 0) {
            const double p = static_cast<double>(s) / n;
            terms.push_back(-p * std::log(p));
        }
    }
    return sorted_sum(terms);
}

}  // namespace

ContingencyTable ContingencyTable::from_labels(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("labelings differ in length");
    }
    if (a.empty()) {
        throw std::invalid_argument("labelings are empty");
    }
    ContingencyTable t;
    const auto ra = dense_ids(a, t.rows);
    const auto cb = dense_ids(b, t.cols);
    t.n = a.size();
    t.counts.assign(t.rows * t.cols, 0);
    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    for (std::size_t i = 0; i < t.n; ++i) {
        ++t.counts[ra[i] * t.cols + cb[i]];
        ++t.row_sums[ra[i]];
        ++t.col_sums[cb[i]];
    }
    return t;
}

double ari(std::span<const int> a, std::span<const int> b) {
    const auto t = ContingencyTable::from_labels(a, b);
    double index = 0.0;
    for (const auto c : t.counts) {
        index += pairs(c);
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (const auto s : t.row_sums) {
        sum_a += pairs(s);
    }
    for (const auto s : t.col_sums) {
        sum_b += pairs(s);
    }
    const double total = pairs(t.n);
    const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
    const double max_index = 0.5 * (sum_a + sum_b);
    const double denom = max_index - expected;
    if (denom == 0.0) {
        return 1.0;
    }
    return (index - expected) / denom;
}

double nmi(std::span<const int> a, std::span<const int> b) {
    const auto t = ContingencyTable::from_labels(a, b);
    const double n = static_cast<double>(t.n);
    const double ha = entropy(t.row_sums, n);
    const double hb = entropy(t.col_sums, n);
    if (ha == 0.0 && hb == 0.0) {
        return 1.0;
    }
    if (ha == 0.0 || hb == 0.0) {
        return 0.0;
    }
    if (t.rows == t.cols && std::count_if(t.counts.begin(), t.counts.end(), [](auto c) { return c > 0; }) ==
                                static_cast<std::ptrdiff_t>(t.rows)) {
        // same partition up to relabeling; I(a;b) = H(a) = H(b)
        return 1.0;
    }
    std::vector<double> terms;
    for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) {
            const auto cnt = t.at(r, c);
            if (cnt == 0) {
                continue;
            }
            const double joint = static_cast<double>(cnt) / n;
            const double expected = static_cast<double>(t.row_sums[r]) * static_cast<double>(t.col_sums[c]) / (n * n);
            terms.push_back(joint * std::log(joint / expected));
        }
    }
    const double mi = sorted_sum(terms);
    // independence can leave tiny negative rounding residue
    return std::clamp(mi / (0.5 * (ha + hb)), 0.0, 1.0);
}

}  // namespace medsil
