#include "medsil/optim.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace medsil {

namespace {

using Clock = std::chrono::steady_clock;

bool past(const SwapOptions& options) { return options.deadline && Clock::now() >= *options.deadline; }

std::vector<bool> medoid_mask(std::size_t n, std::span<const std::size_t> medoids) {
    std::vector<bool> mask(n, false);
    for (const auto m : medoids) {
        mask[m] = true;
    }
    return mask;
}

/// Validates the input and handles k == n. Returns true when the result is already final.
bool prepare(const Dissimilarity& d, const std::vector<std::size_t>& medoids, const SwapOptions& options,
             ClusteringResult& result) {
    validate_medoids(d.size(), medoids);
    if (options.max_iter < 1) {
        throw std::invalid_argument("max_iter must be at least 1");
    }
    if (medoids.size() == d.size()) {
        result.medoids = medoids;
        result.labels = labels_from_medoids(d, medoids);
        result.ams = 1.0;
        result.converged = true;
        return true;
    }
    return false;
}

void finish(const Dissimilarity& d, ClusteringResult& result, Clock::time_point start) {
    result.labels = labels_from_medoids(d, result.medoids);
    result.ams = eval_medoid_silhouette(d, result.medoids).average;
    result.wall_time = Clock::now() - start;
}

/// Sum of Medoid Silhouettes for `medoids`, computed from scratch without caches.
double naive_silhouette_sum(const Dissimilarity& d, std::span<const std::size_t> medoids) {
    double sum = 0.0;
    for (std::size_t o = 0; o < d.size(); ++o) {
        double d1 = kInfinity;
        double d2 = kInfinity;
        for (const auto m : medoids) {
            const double dist = d(o, m);
            if (dist < d1) {
                d2 = d1;
                d1 = dist;
            } else if (dist < d2) {
                d2 = dist;
            }
        }
        sum += 1.0 - safe_ratio(d1, d2);
    }
    return sum;
}

/// ASW of the nearest-medoid labeling, or -2 (below any valid ASW) when the labeling
/// collapses to a single cluster.
double labeling_asw(const Dissimilarity& d, std::span<const std::size_t> medoids) {
    const auto labels = labels_from_medoids(d, medoids);
    const bool several = std::any_of(labels.begin(), labels.end(), [&](int l) { return l != labels.front(); });
    if (!several) {
        return -2.0;
    }
    return eval_full_silhouette(d, labels).average;
}

std::size_t argmax_lowest(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

}  // namespace

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    if (name == "pamsil") return Algorithm::pamsil;
    if (name == "pammedsil") return Algorithm::pammedsil;
    if (name == "fastmsc") return Algorithm::fastmsc;
    if (name == "fastermsc") return Algorithm::fastermsc;
    return std::nullopt;
}

std::string_view algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::pamsil: return "pamsil";
        case Algorithm::pammedsil: return "pammedsil";
        case Algorithm::fastmsc: return "fastmsc";
        case Algorithm::fastermsc: return "fastermsc";
    }
    return "unknown";
}

ClusterState::ClusterState(const Dissimilarity& d, std::vector<std::size_t> initial) : medoids(std::move(initial)) {
    validate_medoids(d.size(), medoids);
    update_caches(d, medoids, caches);
    ams_sum = silhouette_sum(caches);
}

void ClusterState::swap(const Dissimilarity& d, std::size_t pos, std::size_t x) {
    medoids.at(pos) = x;
    update_caches(d, medoids, caches);
    ams_sum = silhouette_sum(caches);
}

double swap_delta_point(const PointCache& c, double d_oj, std::size_t mi_pos) noexcept {
    const double before = safe_ratio(c.d1, c.d2);
    if (mi_pos == c.n1) {
        if (d_oj < c.d2) {
            return before - safe_ratio(d_oj, c.d2);
        }
        if (d_oj < c.d3) {
            return before - safe_ratio(c.d2, d_oj);
        }
        return before - safe_ratio(c.d2, c.d3);
    }
    if (mi_pos == c.n2) {
        if (d_oj < c.d1) {
            return before - safe_ratio(d_oj, c.d1);
        }
        if (d_oj < c.d3) {
            return before - safe_ratio(c.d1, d_oj);
        }
        return before - safe_ratio(c.d1, c.d3);
    }
    if (d_oj < c.d1) {
        return before - safe_ratio(d_oj, c.d1);
    }
    if (d_oj < c.d2) {
        return before - safe_ratio(c.d1, d_oj);
    }
    return 0.0;
}

void removal_loss(std::span<const PointCache> caches, std::size_t k, std::vector<double>& out) {
    out.assign(k, 0.0);
    for (const auto& c : caches) {
        const double r12 = safe_ratio(c.d1, c.d2);
        out[c.n1] += r12 - safe_ratio(c.d2, c.d3);
        out[c.n2] += r12 - safe_ratio(c.d1, c.d3);
    }
}

std::vector<double> removal_loss(std::span<const PointCache> caches, std::size_t k) {
    std::vector<double> out;
    removal_loss(caches, k, out);
    return out;
}

void accumulate_candidate(const Dissimilarity& d, std::span<const PointCache> caches, std::span<const double> removal,
                          std::size_t x, AccumulatorBank& bank) {
    bank.removal.assign(removal.begin(), removal.end());
    double* acc = bank.removal.data();
    double addition = 0.0;
    const std::size_t n = caches.size();
    for (std::size_t o = 0; o < n; ++o) {
        const PointCache& c = caches[o];
        const double doj = d(x, o);
        if (doj >= c.d3) {
            continue;
        }
        if (doj < c.d1) {
            // new nearest; d2 >= d1 > doj >= 0
            const double r12 = c.d1 / c.d2;
            addition += r12 - doj / c.d1;
            acc[c.n1] += doj / c.d1 + safe_ratio(c.d2, c.d3) - (c.d1 + doj) / c.d2;
            acc[c.n2] += safe_ratio(c.d1, c.d3) - r12;
        } else if (doj < c.d2) {
            // new nearest or second, depending on which medoid leaves
            const double r12 = safe_ratio(c.d1, c.d2);
            const double r1j = safe_ratio(c.d1, doj);
            addition += r12 - r1j;
            acc[c.n1] += r1j + safe_ratio(c.d2, c.d3) - (c.d1 + doj) / c.d2;
            acc[c.n2] += safe_ratio(c.d1, c.d3) - r12;
        } else {
            // new second or third
            acc[c.n1] += safe_ratio(c.d2, c.d3) - safe_ratio(c.d2, doj);
            acc[c.n2] += safe_ratio(c.d1, c.d3) - safe_ratio(c.d1, doj);
        }
    }
    bank.addition = addition;
}

std::optional<SwapCandidate> find_best_swap_fastmsc(const Dissimilarity& d, const ClusterState& state) {
    const std::size_t n = d.size();
    const std::size_t k = state.medoids.size();
    const auto is_medoid = medoid_mask(n, state.medoids);
    const auto removal = removal_loss(state.caches, k);
    AccumulatorBank bank;
    std::optional<SwapCandidate> best;
    for (std::size_t x = 0; x < n; ++x) {
        if (is_medoid[x]) {
            continue;
        }
        accumulate_candidate(d, state.caches, removal, x, bank);
        const std::size_t i = argmax_lowest(bank.removal);
        const double total = bank.removal[i] + bank.addition;
        if (!best || total > best->delta) {
            best = SwapCandidate{total, i, x};
        }
    }
    return best;
}

ClusteringResult pammedsil_naive(const Dissimilarity& d, std::vector<std::size_t> medoids, const SwapOptions& options) {
    const auto start = Clock::now();
    ClusteringResult result;
    if (prepare(d, medoids, options, result)) {
        return result;
    }
    const std::size_t n = d.size();
    const std::size_t k = medoids.size();
    const double threshold = improvement_threshold(n);
    auto is_medoid = medoid_mask(n, medoids);
    double current = naive_silhouette_sum(d, medoids);
    std::vector<std::size_t> trial = medoids;

    while (result.iterations < options.max_iter && !result.timed_out) {
        ++result.iterations;
        double best = -kInfinity;
        std::size_t best_pos = 0;
        std::size_t best_x = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (is_medoid[x]) {
                continue;
            }
            if (past(options)) {
                result.timed_out = true;
                break;
            }
            ++result.evaluations;
            for (std::size_t pos = 0; pos < k; ++pos) {
                trial[pos] = x;
                const double s = naive_silhouette_sum(d, trial);
                trial[pos] = medoids[pos];
                if (s > best) {
                    best = s;
                    best_pos = pos;
                    best_x = x;
                }
            }
        }
        if (result.timed_out) {
            break;
        }
        if (!(best - current > threshold)) {
            result.converged = true;
            break;
        }
        is_medoid[medoids[best_pos]] = false;
        is_medoid[best_x] = true;
        result.history.push_back({best_pos, medoids[best_pos], best_x, best / static_cast<double>(n)});
        medoids[best_pos] = best_x;
        trial[best_pos] = best_x;
        current = best;
        ++result.swaps;
    }
    result.medoids = std::move(medoids);
    finish(d, result, start);
    return result;
}

ClusteringResult fastmsc(const Dissimilarity& d, std::vector<std::size_t> medoids, const SwapOptions& options) {
    const auto start = Clock::now();
    ClusteringResult result;
    if (prepare(d, medoids, options, result)) {
        return result;
    }
    const std::size_t n = d.size();
    const double threshold = improvement_threshold(n);
    ClusterState state(d, std::move(medoids));

    while (result.iterations < options.max_iter) {
        if (past(options)) {
            result.timed_out = true;
            break;
        }
        ++result.iterations;
        const auto best = find_best_swap_fastmsc(d, state);
        result.evaluations += n - state.medoids.size();
        if (!best || !(best->delta > threshold)) {
            result.converged = true;
            break;
        }
        const std::size_t removed = state.medoids[best->medoid_pos];
        state.swap(d, best->medoid_pos, best->point);
        result.history.push_back({best->medoid_pos, removed, best->point, state.ams_sum / static_cast<double>(n)});
        ++result.swaps;
    }
    result.medoids = std::move(state.medoids);
    finish(d, result, start);
    return result;
}

ClusteringResult fastermsc(const Dissimilarity& d, std::vector<std::size_t> medoids, const SwapOptions& options) {
    const auto start = Clock::now();
    ClusteringResult result;
    if (prepare(d, medoids, options, result)) {
        return result;
    }
    const std::size_t n = d.size();
    const std::size_t k = medoids.size();
    const double threshold = improvement_threshold(n);
    ClusterState state(d, std::move(medoids));
    auto is_medoid = medoid_mask(n, state.medoids);
    std::vector<double> removal;
    removal_loss(state.caches, k, removal);
    AccumulatorBank bank;

    const std::size_t max_visits = options.max_iter * n;
    std::size_t last_swap = n;  // none yet
    std::size_t visits = 0;
    for (std::size_t x = 0;; x = (x + 1) % n) {
        if (x == last_swap || (last_swap == n && visits == n)) {
            result.converged = true;
            break;
        }
        if (visits == max_visits) {
            break;
        }
        if (visits % n == 0 && past(options)) {
            result.timed_out = true;
            break;
        }
        ++visits;
        if (is_medoid[x]) {
            continue;
        }
        ++result.evaluations;
        accumulate_candidate(d, state.caches, removal, x, bank);
        const std::size_t i = argmax_lowest(bank.removal);
        const double total = bank.removal[i] + bank.addition;
        if (!(total > threshold)) {
            continue;
        }
        const std::size_t removed = state.medoids[i];
        is_medoid[removed] = false;
        is_medoid[x] = true;
        state.swap(d, i, x);
        removal_loss(state.caches, k, removal);
        result.history.push_back({i, removed, x, state.ams_sum / static_cast<double>(n)});
        ++result.swaps;
        last_swap = x;
    }
    result.iterations = (visits + n - 1) / n;
    result.medoids = std::move(state.medoids);
    finish(d, result, start);
    return result;
}

ClusteringResult pamsil(const Dissimilarity& d, std::vector<std::size_t> medoids, const SwapOptions& options) {
    const auto start = Clock::now();
    ClusteringResult result;
    if (prepare(d, medoids, options, result)) {
        result.asw = labeling_asw(d, result.medoids);
        return result;
    }
    const std::size_t n = d.size();
    const std::size_t k = medoids.size();
    const double threshold = improvement_threshold(1);
    auto is_medoid = medoid_mask(n, medoids);
    double current = labeling_asw(d, medoids);
    std::vector<std::size_t> trial = medoids;

    while (result.iterations < options.max_iter && !result.timed_out) {
        ++result.iterations;
        double best = -kInfinity;
        std::size_t best_pos = 0;
        std::size_t best_x = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (is_medoid[x]) {
                continue;
            }
            if (past(options)) {
                result.timed_out = true;
                break;
            }
            ++result.evaluations;
            for (std::size_t pos = 0; pos < k; ++pos) {
                trial[pos] = x;
                const double s = labeling_asw(d, trial);
                trial[pos] = medoids[pos];
                if (s > best) {
                    best = s;
                    best_pos = pos;
                    best_x = x;
                }
            }
        }
        if (result.timed_out) {
            break;
        }
        if (!(best - current > threshold)) {
            result.converged = true;
            break;
        }
        is_medoid[medoids[best_pos]] = false;
        is_medoid[best_x] = true;
        result.history.push_back({best_pos, medoids[best_pos], best_x, best});
        medoids[best_pos] = best_x;
        trial[best_pos] = best_x;
        current = best;
        ++result.swaps;
    }
    result.medoids = std::move(medoids);
    finish(d, result, start);
    result.asw = current;
    return result;
}

ClusteringResult optimize(Algorithm algo, const Dissimilarity& d, std::vector<std::size_t> medoids,
                          const SwapOptions& options) {
    switch (algo) {
        case Algorithm::pamsil: return pamsil(d, std::move(medoids), options);
        case Algorithm::pammedsil: return pammedsil_naive(d, std::move(medoids), options);
        case Algorithm::fastmsc: return fastmsc(d, std::move(medoids), options);
        case Algorithm::fastermsc: return fastermsc(d, std::move(medoids), options);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace medsil
