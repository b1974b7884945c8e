#pragma once

#include "medsil/dissim.hpp"
#include "medsil/optim.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace medsil {

enum class InitMethod { build, random };

std::optional<InitMethod> parse_init(std::string_view name);
std::string_view init_name(InitMethod init);

struct FitConfig {
    std::size_t k = 2;
    Algorithm algo = Algorithm::fastmsc;
    InitMethod init = InitMethod::build;
    std::uint64_t seed = 0;
    std::size_t restarts = 1;
    std::size_t max_iter = 100;
    /// Worker threads for independent restarts; results do not depend on it.
    std::size_t threads = 1;
    bool compute_asw = true;
    std::optional<double> timeout_sec;
};

struct FitOutcome {
    ClusteringResult best;
    std::size_t best_restart = 0;
    /// One entry per restart, in restart order.
    std::vector<ClusteringResult> runs;
};

/// Throws std::invalid_argument when k or restarts are out of range for n objects.
void validate(const FitConfig& config, std::size_t n);

/// Initial medoids of restart `r` (seed + r for random initialization).
std::vector<std::size_t> initial_medoids(const Dissimilarity& d, const FitConfig& config, std::size_t restart);

/// Runs `restarts` optimizations and keeps the best AMS (best ASW for pamsil); the earliest
/// restart wins ties. The outcome is deterministic for a given input and config.
FitOutcome fit(const Dissimilarity& d, const FitConfig& config);

/// Runs fn(0) ... fn(count - 1) on at most `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn);

}  // namespace medsil

#include "medsil/detail/parallel.hpp"
