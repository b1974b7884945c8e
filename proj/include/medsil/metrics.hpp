#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace medsil {

/// Co-occurrence counts of two labelings over the same objects.
struct ContingencyTable {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> counts;  // row-major rows x cols
    std::vector<std::size_t> row_sums;
    std::vector<std::size_t> col_sums;
    std::size_t n = 0;

    static ContingencyTable from_labels(std::span<const int> a, std::span<const int> b);

    std::size_t at(std::size_t r, std::size_t c) const { return counts[r * cols + c]; }
};

/// Hubert-Arabie Adjusted Rand Index. 1 when the chance-corrected denominator vanishes,
/// which only happens for two identical trivial partitions.
double ari(std::span<const int> a, std::span<const int> b);

/// Normalized Mutual Information, I(a;b) / ((H(a) + H(b)) / 2) with natural logarithms.
/// Both constant: 1. Exactly one constant: 0.
double nmi(std::span<const int> a, std::span<const int> b);

}  // namespace medsil
