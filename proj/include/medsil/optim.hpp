#pragma once

#include "medsil/cache.hpp"
#include "medsil/dissim.hpp"
#include "medsil/silhouette.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace medsil {

enum class Algorithm { pamsil, pammedsil, fastmsc, fastermsc };

std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm algo);

/// Smallest change of the objective sum that counts as an improvement. Anything below is
/// treated as rounding noise, so zero-gain swaps (e.g. between duplicate points) cannot cycle.
inline double improvement_threshold(std::size_t n) noexcept { return 1e-12 * static_cast<double>(n); }

struct SwapOptions {
    std::size_t max_iter = 100;
    /// Optimizers poll this and stop early with timed_out set.
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SwapRecord {
    std::size_t medoid_pos = 0;
    std::size_t removed = 0;
    std::size_t added = 0;
    double objective = 0.0;  // AMS after the swap (ASW for pamsil)
};

struct ClusteringResult {
    std::vector<std::size_t> medoids;
    Labels labels;
    double ams = 0.0;
    std::optional<double> asw;
    std::size_t iterations = 0;
    std::size_t swaps = 0;
    /// Number of (non-medoid) swap candidates scored.
    std::size_t evaluations = 0;
    std::chrono::duration<double> wall_time{0.0};
    bool converged = false;
    bool timed_out = false;
    std::vector<SwapRecord> history;
};

/// Medoids plus the per-point caches derived from them.
struct ClusterState {
    std::vector<std::size_t> medoids;
    std::vector<PointCache> caches;
    double ams_sum = 0.0;  // n * AMS

    ClusterState(const Dissimilarity& d, std::vector<std::size_t> initial);

    /// Replaces the medoid at `pos` by point `x` and recomputes all caches.
    void swap(const Dissimilarity& d, std::size_t pos, std::size_t x);
};

/// Change d1/d2 - d1'/d2' of one point's loss when the medoid at `mi_pos` is replaced by a
/// point at distance `d_oj`. Positive means the point's Medoid Silhouette improves.
double swap_delta_point(const PointCache& c, double d_oj, std::size_t mi_pos) noexcept;

/// Loss change of deleting each medoid without replacement (sum scale, length k).
std::vector<double> removal_loss(std::span<const PointCache> caches, std::size_t k);
void removal_loss(std::span<const PointCache> caches, std::size_t k, std::vector<double>& out);

/// Per-candidate accumulators. After accumulate_candidate(x), removal[i] + addition is the
/// total change (sum scale) of swapping medoid position i for x.
struct AccumulatorBank {
    std::vector<double> removal;
    double addition = 0.0;
};

/// One pass over all points for candidate `x`, seeded with `removal` from removal_loss().
void accumulate_candidate(const Dissimilarity& d, std::span<const PointCache> caches, std::span<const double> removal,
                          std::size_t x, AccumulatorBank& bank);

struct SwapCandidate {
    double delta = 0.0;  // sum scale; n * change in AMS
    std::size_t medoid_pos = 0;
    std::size_t point = 0;
};

/// Best swap over all (medoid, non-medoid) pairs in O(n^2). Candidates are visited in point
/// order; the first strictly largest delta wins and within a candidate the lowest medoid
/// position wins. Returns nullopt when every point is a medoid.
std::optional<SwapCandidate> find_best_swap_fastmsc(const Dissimilarity& d, const ClusterState& state);

/// Steepest-ascent swap search scoring each candidate by recomputing AMS from scratch.
/// Candidate order and tie-breaking match fastmsc, so the trajectories coincide.
ClusteringResult pammedsil_naive(const Dissimilarity& d, std::vector<std::size_t> medoids,
                                 const SwapOptions& options = {});

/// Steepest-ascent swap search using the removal/addition accumulators.
ClusteringResult fastmsc(const Dissimilarity& d, std::vector<std::size_t> medoids, const SwapOptions& options = {});

/// Eager variant of fastmsc: performs the first improving swap found, scanning candidates
/// round-robin from the point after the last swap. Stops after a full cycle without a swap.
/// max_iter bounds the number of full cycles.
ClusteringResult fastermsc(const Dissimilarity& d, std::vector<std::size_t> medoids, const SwapOptions& options = {});

/// Steepest-ascent swap search maximizing the full ASW of the nearest-medoid labeling.
/// O(k (n-k) n^2) per iteration; meant for small n.
ClusteringResult pamsil(const Dissimilarity& d, std::vector<std::size_t> medoids, const SwapOptions& options = {});

ClusteringResult optimize(Algorithm algo, const Dissimilarity& d, std::vector<std::size_t> medoids,
                          const SwapOptions& options = {});

}  // namespace medsil
