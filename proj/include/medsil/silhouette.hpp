#pragma once

#include "medsil/cache.hpp"
#include "medsil/dissim.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace medsil {

using Labels = std::vector<int>;

struct SilhouetteBreakdown {
    std::vector<double> per_point;
    std::vector<double> a;  // mean distance to the other members of the own cluster
    std::vector<double> b;  // smallest mean distance to another cluster
    double average = 0.0;   // ASW
};

struct MedoidSilhouetteBreakdown {
    std::vector<double> per_point;
    double average = 0.0;  // AMS
    std::vector<PointCache> caches;
};

/// Throws std::invalid_argument unless `medoids` holds at least `min_k` distinct indices < n.
void validate_medoids(std::size_t n, std::span<const std::size_t> medoids, std::size_t min_k = 2);

/// Medoid Silhouette of every point for the given medoids, in O(nk).
MedoidSilhouetteBreakdown eval_medoid_silhouette(const Dissimilarity& d, std::span<const std::size_t> medoids);

/// Classical Silhouette for an arbitrary labeling, O(n^2).
///
/// a_i excludes the point itself. Points in singleton clusters get s_i = 0. Labels may be any
/// integers; at least two distinct values are required.
SilhouetteBreakdown eval_full_silhouette(const Dissimilarity& d, std::span<const int> labels);

/// Label of each point is the position of its nearest medoid (lowest position on ties).
Labels labels_from_medoids(const Dissimilarity& d, std::span<const std::size_t> medoids);

/// A dissimilarity for which `medoids` is the unique AMS maximizer among sets of the same size
/// (when n >= k + 2). d(i,j) = 0 if i == j, or if one of them is medoids[0] and the other is not
/// a medoid; every other pair is at distance 1.
Dissimilarity richness_witness(std::size_t n, std::span<const std::size_t> medoids);

}  // namespace medsil
