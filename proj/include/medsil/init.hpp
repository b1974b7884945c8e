#pragma once

#include "medsil/dissim.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace medsil {

/// Seeded pseudo-random source with a platform-independent stream.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the C++ standard, and draws
/// bounded integers with its own rejection sampler instead of std::uniform_int_distribution
/// (whose algorithm differs between standard libraries).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

  private:
    std::mt19937_64 engine_;
};

/// PAM BUILD: greedy minimization of the total distance to the nearest medoid.
/// Ties go to the lowest index. O(n^2 k).
std::vector<std::size_t> build_init(const Dissimilarity& d, std::size_t k);

/// k distinct indices drawn uniformly from [0, n) (partial Fisher-Yates).
std::vector<std::size_t> random_init(std::size_t n, std::size_t k, Rng& rng);

}  // namespace medsil
