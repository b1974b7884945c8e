#pragma once

#include "medsil/dissim.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace medsil {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// a / b, except 0 whenever a == 0 (covers 0 / 0). Callers guarantee a <= b, so a zero
/// denominator always comes with a zero numerator.
inline double safe_ratio(double a, double b) noexcept { return a == 0.0 ? 0.0 : a / b; }

/// Nearest, second and third nearest medoid of one point. n1/n2 are positions in the
/// medoid list, not point indices. d3 is +inf when there are only two medoids.
struct PointCache {
    std::uint32_t n1 = 0;
    std::uint32_t n2 = 0;
    double d1 = kInfinity;
    double d2 = kInfinity;
    double d3 = kInfinity;

    /// Medoid Silhouette of this point, 1 - d1/d2.
    double silhouette() const noexcept { return 1.0 - safe_ratio(d1, d2); }
};

/// Recomputes the cache of every point against `medoids` in O(nk).
/// Equal distances keep the lower medoid position first. Requires k >= 2.
std::vector<PointCache> update_caches(const Dissimilarity& d, std::span<const std::size_t> medoids);

/// Fills `caches` in place (resized to n); avoids reallocating in optimizer loops.
void update_caches(const Dissimilarity& d, std::span<const std::size_t> medoids, std::vector<PointCache>& caches);

/// Sum of per-point Medoid Silhouettes, i.e. n * AMS.
double silhouette_sum(std::span<const PointCache> caches) noexcept;

}  // namespace medsil
