#include "medsil/init.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace medsil {

namespace {

void check_k(std::size_t n, std::size_t k) {
    if (k < 2 || k >= n) {
        throw std::invalid_argument("k must satisfy 2 <= k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                                    ")");
    }
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("Rng::below: bound must be positive");
    }
    // reject the top partial block so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % bound;
}

std::vector<std::size_t> build_init(const Dissimilarity& d, std::size_t k) {
    const std::size_t n = d.size();
    check_k(n, k);

    std::vector<std::size_t> medoids;
    medoids.reserve(k);
    std::vector<bool> chosen(n, false);

    std::size_t first = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
        double sum = 0.0;
        for (std::size_t o = 0; o < n; ++o) {
            sum += d(c, o);
        }
        if (sum < best_sum) {
            best_sum = sum;
            first = c;
        }
    }
    medoids.push_back(first);
    chosen[first] = true;

    std::vector<double> nearest(n);
    for (std::size_t o = 0; o < n; ++o) {
        nearest[o] = d(o, first);
    }

    while (medoids.size() < k) {
        std::size_t pick = n;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (chosen[c]) {
                continue;
            }
            double gain = 0.0;
            for (std::size_t o = 0; o < n; ++o) {
                const double dist = d(o, c);
                if (dist < nearest[o]) {
                    gain += nearest[o] - dist;
                }
            }
            if (gain > best_gain) {
                best_gain = gain;
                pick = c;
            }
        }
        medoids.push_back(pick);
        chosen[pick] = true;
        for (std::size_t o = 0; o < n; ++o) {
            nearest[o] = std::min(nearest[o], d(o, pick));
        }
    }
    return medoids;
}

std::vector<std::size_t> random_init(std::size_t n, std::size_t k, Rng& rng) {
    check_k(n, k);
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace medsil
