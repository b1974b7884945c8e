#include "medsil/fit.hpp"

#include "medsil/init.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace medsil {

std::optional<InitMethod> parse_init(std::string_view name) {
    if (name == "build") return InitMethod::build;
    if (name == "random") return InitMethod::random;
    return std::nullopt;
}

std::string_view init_name(InitMethod init) { return init == InitMethod::build ? "build" : "random"; }

void validate(const FitConfig& config, std::size_t n) {
    if (config.k < 2 || config.k > n) {
        throw std::invalid_argument("k must satisfy 2 <= k <= n (k=" + std::to_string(config.k) +
                                    ", n=" + std::to_string(n) + ")");
    }
    if (config.restarts < 1) {
        throw std::invalid_argument("restarts must be at least 1");
    }
    if (config.max_iter < 1) {
        throw std::invalid_argument("max_iter must be at least 1");
    }
}

std::vector<std::size_t> initial_medoids(const Dissimilarity& d, const FitConfig& config, std::size_t restart) {
    const std::size_t n = d.size();
    if (config.k == n) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return all;
    }
    if (config.init == InitMethod::build) {
        return build_init(d, config.k);
    }
    Rng rng(config.seed + restart);
    return random_init(n, config.k, rng);
}

FitOutcome fit(const Dissimilarity& d, const FitConfig& config) {
    validate(config, d.size());
    SwapOptions options;
    options.max_iter = config.max_iter;
    if (config.timeout_sec) {
        options.deadline = std::chrono::steady_clock::now() +
                           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(*config.timeout_sec));
    }

    FitOutcome out;
    out.runs.resize(config.restarts);
    parallel_for(config.restarts, config.threads, [&](std::size_t r) {
        out.runs[r] = optimize(config.algo, d, initial_medoids(d, config, r), options);
    });

    const bool by_asw = config.algo == Algorithm::pamsil;
    for (std::size_t r = 1; r < out.runs.size(); ++r) {
        const auto& cand = out.runs[r];
        const auto& best = out.runs[out.best_restart];
        const double lhs = by_asw ? cand.asw.value_or(-2.0) : cand.ams;
        const double rhs = by_asw ? best.asw.value_or(-2.0) : best.ams;
        if (lhs > rhs) {
            out.best_restart = r;
        }
    }
    out.best = out.runs[out.best_restart];
    if (config.compute_asw && !out.best.asw) {
        const bool several = std::any_of(out.best.labels.begin(), out.best.labels.end(),
                                         [&](int l) { return l != out.best.labels.front(); });
        if (several) {
            out.best.asw = eval_full_silhouette(d, out.best.labels).average;
        }
    }
    return out;
}

}  // namespace medsil
