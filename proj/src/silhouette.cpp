#include "medsil/silhouette.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace medsil {

void update_caches(const Dissimilarity& d, std::span<const std::size_t> medoids, std::vector<PointCache>& caches) {
    const std::size_t n = d.size();
    const std::size_t k = medoids.size();
    if (k < 2) {
        throw std::invalid_argument("update_caches: need at least 2 medoids");
    }
    caches.resize(n);
    for (std::size_t o = 0; o < n; ++o) {
        PointCache c;
        for (std::size_t pos = 0; pos < k; ++pos) {
            const double dist = d(o, medoids[pos]);
            // strict comparisons keep earlier positions ahead on ties
            if (dist < c.d1) {
                c.d3 = c.d2;
                c.n2 = c.n1;
                c.d2 = c.d1;
                c.n1 = static_cast<std::uint32_t>(pos);
                c.d1 = dist;
            } else if (dist < c.d2) {
                c.d3 = c.d2;
                c.n2 = static_cast<std::uint32_t>(pos);
                c.d2 = dist;
            } else if (dist < c.d3) {
                c.d3 = dist;
            }
        }
        caches[o] = c;
    }
}

std::vector<PointCache> update_caches(const Dissimilarity& d, std::span<const std::size_t> medoids) {
    std::vector<PointCache> caches;
    update_caches(d, medoids, caches);
    return caches;
}

double silhouette_sum(std::span<const PointCache> caches) noexcept {
    double sum = 0.0;
    for (const auto& c : caches) {
        sum += c.silhouette();
    }
    return sum;
}

void validate_medoids(std::size_t n, std::span<const std::size_t> medoids, std::size_t min_k) {
    if (medoids.size() < min_k) {
        throw std::invalid_argument("need at least " + std::to_string(min_k) + " medoids, got " +
                                    std::to_string(medoids.size()));
    }
    if (medoids.size() > n) {
        throw std::invalid_argument("more medoids than objects");
    }
    std::vector<bool> seen(n, false);
    for (const auto m : medoids) {
        if (m >= n) {
            throw std::invalid_argument("medoid index " + std::to_string(m) + " out of range");
        }
        if (seen[m]) {
            throw std::invalid_argument("duplicate medoid index " + std::to_string(m));
        }
        seen[m] = true;
    }
}

MedoidSilhouetteBreakdown eval_medoid_silhouette(const Dissimilarity& d, std::span<const std::size_t> medoids) {
    validate_medoids(d.size(), medoids);
    MedoidSilhouetteBreakdown out;
    update_caches(d, medoids, out.caches);
    out.per_point.reserve(out.caches.size());
    for (const auto& c : out.caches) {
        out.per_point.push_back(c.silhouette());
    }
    // summed in sorted order so relabeling the points cannot change the result
    std::vector<double> sorted = out.per_point;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (const double v : sorted) {
        sum += v;
    }
    out.average = sum / static_cast<double>(out.caches.size());
    return out;
}

SilhouetteBreakdown eval_full_silhouette(const Dissimilarity& d, std::span<const int> labels) {
    const std::size_t n = d.size();
    if (labels.size() != n) {
        throw std::invalid_argument("eval_full_silhouette: " + std::to_string(labels.size()) + " labels for " +
                                    std::to_string(n) + " objects");
    }
    // dense cluster ids in order of first appearance
    std::unordered_map<int, std::size_t> ids;
    std::vector<std::size_t> cluster(n);
    for (std::size_t i = 0; i < n; ++i) {
        cluster[i] = ids.try_emplace(labels[i], ids.size()).first->second;
    }
    const std::size_t k = ids.size();
    if (k < 2) {
        throw std::invalid_argument("eval_full_silhouette: need at least 2 clusters");
    }
    std::vector<std::size_t> sizes(k, 0);
    for (const auto c : cluster) {
        ++sizes[c];
    }

    SilhouetteBreakdown out;
    out.per_point.resize(n);
    out.a.resize(n);
    out.b.resize(n);
    std::vector<double> sums(k);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            sums[cluster[j]] += d(i, j);
        }
        const std::size_t own = cluster[i];
        double b = kInfinity;
        for (std::size_t c = 0; c < k; ++c) {
            if (c != own) {
                b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
            }
        }
        out.b[i] = b;
        if (sizes[own] == 1) {
            out.a[i] = 0.0;
            out.per_point[i] = 0.0;
            continue;
        }
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        out.a[i] = a;
        const double denom = std::max(a, b);
        out.per_point[i] = denom == 0.0 ? 0.0 : (b - a) / denom;
        total += out.per_point[i];
    }
    out.average = total / static_cast<double>(n);
    return out;
}

Labels labels_from_medoids(const Dissimilarity& d, std::span<const std::size_t> medoids) {
    validate_medoids(d.size(), medoids, 1);
    Labels labels(d.size());
    for (std::size_t o = 0; o < d.size(); ++o) {
        double best = kInfinity;
        int pos = 0;
        for (std::size_t p = 0; p < medoids.size(); ++p) {
            const double dist = d(o, medoids[p]);
            if (dist < best) {
                best = dist;
                pos = static_cast<int>(p);
            }
        }
        labels[o] = pos;
    }
    return labels;
}

Dissimilarity richness_witness(std::size_t n, std::span<const std::size_t> medoids) {
    if (medoids.size() < 2 || n <= medoids.size()) {
        throw std::invalid_argument("richness_witness: need 2 <= k < n");
    }
    validate_medoids(n, medoids);
    std::vector<bool> is_medoid(n, false);
    for (const auto m : medoids) {
        is_medoid[m] = true;
    }
    const std::size_t first = medoids.front();
    std::vector<double> values(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        values[i * n + i] = 0.0;
        if (!is_medoid[i]) {
            values[i * n + first] = 0.0;
            values[first * n + i] = 0.0;
        }
    }
    return Dissimilarity::from_matrix(n, std::move(values));
}

}  // namespace medsil
