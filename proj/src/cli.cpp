#include "medsil/cli.hpp"

#include "medsil/metrics.hpp"
#include "medsil/silhouette.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace medsil::cli {

namespace {

Algorithm algo_or_throw(const std::string& name) {
    const auto algo = parse_algorithm(name);
    if (!algo) {
        throw CliError(kUnknownName, "unknown algorithm '" + name + "' (expected pamsil, pammedsil, fastmsc, fastermsc)");
    }
    return *algo;
}

InitMethod init_or_throw(const std::string& name) {
    const auto init = parse_init(name);
    if (!init) {
        throw CliError(kUnknownName, "unknown init '" + name + "' (expected build, random)");
    }
    return *init;
}

MetricId metric_or_throw(const std::string& name, bool precomputed) {
    if (precomputed) {
        return MetricId::precomputed;
    }
    const auto metric = parse_metric(name);
    if (!metric) {
        throw CliError(kUnknownName, "unknown metric '" + name + "'");
    }
    if (*metric == MetricId::precomputed) {
        throw CliError(kUnknownName, "metric 'precomputed' requires --precomputed");
    }
    return *metric;
}

Table read_input(const std::string& path) {
    try {
        return read_table_file(path);
    } catch (const std::ios_base::failure& e) {
        throw CliError(kUnreadableInput, e.what());
    } catch (const InputError& e) {
        throw CliError(kMalformedInput, path + ": " + e.what());
    }
}

Dissimilarity make_provider(const Table& table, bool precomputed, MetricId metric, Storage storage) {
    try {
        if (precomputed) {
            auto d = load_matrix(table);
            if (d.asymmetric_pairs() > 0) {
                std::cerr << "warning: " << d.asymmetric_pairs()
                          << " asymmetric matrix entries were symmetrized by averaging\n";
            }
            return d;
        }
        return load_points(table, metric, storage);
    } catch (const InputError& e) {
        throw CliError(kMalformedInput, e.what());
    }
}

/// First n objects of the table: leading rows for points, leading block for a matrix.
Table leading(const Table& table, std::size_t n, bool precomputed) {
    Table out;
    out.rows = n;
    if (precomputed) {
        out.cols = n;
        out.values.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            out.values.insert(out.values.end(), table.row(i), table.row(i) + n);
        }
    } else {
        out.cols = table.cols;
        out.values.assign(table.values.begin(), table.values.begin() + static_cast<std::ptrdiff_t>(n * table.cols));
    }
    return out;
}

std::vector<std::size_t> parse_grid(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = std::min(text.find(',', start), text.size());
        const auto token = text.substr(start, comma - start);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
            throw CliError(kUsage, std::string("invalid ") + what + " entry '" + token + "'");
        }
        out.push_back(value);
        start = comma + 1;
    }
    return out;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = std::min(text.find(',', start), text.size());
        out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
    if (!path) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(*path);
    if (!out || !(out << text << '\n')) {
        throw CliError(kOutputFailure, "cannot write '" + *path + "'");
    }
}

}  // namespace

std::size_t threads_from_env(std::size_t fallback) {
    const char* env = std::getenv("MEDSIL_THREADS");
    if (env == nullptr) {
        return fallback;
    }
    std::size_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        return fallback;
    }
    return value;
}

std::vector<int> read_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError(kUnreadableInput, "cannot open '" + path + "'");
    }
    std::unordered_map<std::string, int> ids;
    std::vector<int> labels;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        const auto token = line.substr(first, last - first + 1);
        labels.push_back(ids.try_emplace(token, static_cast<int>(ids.size())).first->second);
    }
    return labels;
}

nlohmann::json run(const RunConfig& config) {
    FitConfig fit_config;
    fit_config.algo = algo_or_throw(config.algo);
    fit_config.init = init_or_throw(config.init);
    const MetricId metric = metric_or_throw(config.metric, config.precomputed);
    fit_config.k = config.k;
    fit_config.seed = config.seed;
    fit_config.restarts = config.restarts;
    fit_config.max_iter = config.max_iter;
    fit_config.threads = config.threads;

    const Table table = read_input(config.input);
    const Dissimilarity d = make_provider(table, config.precomputed, metric, config.lazy ? Storage::lazy : Storage::dense);
    try {
        validate(fit_config, d.size());
    } catch (const std::invalid_argument& e) {
        throw CliError(kInvalidConfig, e.what());
    }

    std::optional<std::vector<int>> truth;
    if (config.true_labels) {
        truth = read_labels(*config.true_labels);
        if (truth->size() != d.size()) {
            throw CliError(kMalformedInput, "true labels: " + std::to_string(truth->size()) + " labels for " +
                                                std::to_string(d.size()) + " objects");
        }
    }

    const FitOutcome outcome = fit(d, fit_config);
    const ClusteringResult& best = outcome.best;

    nlohmann::json report;
    report["schema"] = kReportSchema;
    report["input"] = config.input;
    report["n"] = d.size();
    report["k"] = fit_config.k;
    report["algo"] = algorithm_name(fit_config.algo);
    report["init"] = init_name(fit_config.init);
    report["metric"] = metric_name(metric);
    report["seed"] = config.seed;
    report["restarts"] = config.restarts;
    report["max_iter"] = config.max_iter;
    report["best_restart"] = outcome.best_restart;
    report["medoids"] = best.medoids;
    report["labels"] = best.labels;
    report["ams"] = best.ams;
    report["asw"] = best.asw ? nlohmann::json(*best.asw) : nlohmann::json(nullptr);
    report["iterations"] = best.iterations;
    report["swaps"] = best.swaps;
    report["evaluations"] = best.evaluations;
    report["converged"] = best.converged;
    report["wall_time_sec"] = best.wall_time.count();
    double total = 0.0;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : outcome.runs) {
        total += r.wall_time.count();
        runs.push_back({{"ams", r.ams}, {"iterations", r.iterations}, {"swaps", r.swaps}, {"converged", r.converged}});
    }
    report["runs"] = runs;
    report["total_wall_time_sec"] = total;
    if (truth) {
        report["ari"] = ari(*truth, best.labels);
        report["nmi"] = nmi(*truth, best.labels);
    }
    return report;
}

void write_bench_header(std::ostream& out) {
    out << "n,k,algo,restart,status,wall_time_sec,iterations,swaps,ams,asw\n";
}

void write_bench_row(std::ostream& out, const BenchRow& row) {
    char buf[64];
    const auto num = [&](double v) {
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    out << row.n << ',' << row.k << ',' << row.algo << ',' << row.restart << ','
        << (row.timed_out ? "timeout" : "ok") << ',' << num(row.wall_time) << ',' << row.iterations << ','
        << row.swaps << ',' << num(row.ams) << ',' << (row.asw ? num(*row.asw) : std::string()) << '\n';
    out.flush();
}

std::vector<BenchRow> bench(const BenchConfig& config, std::ostream& out) {
    if (config.n_grid.empty() || config.k_grid.empty() || config.algos.empty()) {
        throw CliError(kUsage, "bench needs non-empty --n-grid, --k-grid and --algos");
    }
    std::vector<Algorithm> algos;
    for (const auto& name : config.algos) {
        algos.push_back(algo_or_throw(name));
    }
    const InitMethod init = init_or_throw(config.init);
    const MetricId metric = metric_or_throw(config.metric, config.precomputed);
    if (config.restarts < 1 || config.max_iter < 1) {
        throw CliError(kInvalidConfig, "restarts and max_iter must be at least 1");
    }
    const Table table = read_input(config.input);
    if (config.precomputed && table.rows != table.cols) {
        throw CliError(kMalformedInput, "precomputed matrix is not square");
    }
    for (const auto n : config.n_grid) {
        if (n < 3 || n > table.rows) {
            throw CliError(kInvalidConfig, "grid size n=" + std::to_string(n) + " outside [3, " +
                                               std::to_string(table.rows) + "]");
        }
        for (const auto k : config.k_grid) {
            if (k < 2 || k >= n) {
                throw CliError(kInvalidConfig, "k=" + std::to_string(k) + " invalid for n=" + std::to_string(n));
            }
        }
    }

    struct Cell {
        std::size_t grid_n;
        std::size_t k;
        Algorithm algo;
        std::size_t restart;
    };
    std::vector<Cell> cells;
    for (const auto n : config.n_grid) {
        for (const auto k : config.k_grid) {
            for (const auto algo : algos) {
                for (std::size_t r = 0; r < config.restarts; ++r) {
                    cells.push_back({n, k, algo, r});
                }
            }
        }
    }

    write_bench_header(out);
    std::vector<BenchRow> rows(cells.size());
    std::vector<bool> done(cells.size(), false);
    std::size_t flushed = 0;
    std::mutex out_mutex;

    // one provider per grid size, built before any timing starts
    std::size_t begin = 0;
    for (const auto n : config.n_grid) {
        const Dissimilarity d = make_provider(leading(table, n, config.precomputed), config.precomputed, metric,
                                              Storage::dense);
        const std::size_t end = begin + config.k_grid.size() * algos.size() * config.restarts;
        parallel_for(end - begin, config.threads, [&](std::size_t offset) {
            const std::size_t idx = begin + offset;
            const Cell& cell = cells[idx];
            FitConfig fc;
            fc.k = cell.k;
            fc.init = init;
            fc.seed = config.seed;
            SwapOptions options;
            options.max_iter = config.max_iter;
            if (config.timeout_sec) {
                options.deadline = std::chrono::steady_clock::now() +
                                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                       std::chrono::duration<double>(*config.timeout_sec));
            }
            const auto result = optimize(cell.algo, d, initial_medoids(d, fc, cell.restart), options);
            BenchRow row;
            row.n = n;
            row.k = cell.k;
            row.algo = std::string(algorithm_name(cell.algo));
            row.restart = cell.restart;
            row.timed_out = result.timed_out;
            row.wall_time = result.wall_time.count();
            row.iterations = result.iterations;
            row.swaps = result.swaps;
            row.ams = result.ams;
            row.asw = result.asw;
            if (!row.asw && !result.timed_out) {
                row.asw = eval_full_silhouette(d, result.labels).average;
            }
            std::lock_guard lock(out_mutex);
            rows[idx] = std::move(row);
            done[idx] = true;
            while (flushed < cells.size() && done[flushed]) {
                write_bench_row(out, rows[flushed]);
                ++flushed;
            }
        });
        begin = end;
    }
    return rows;
}

int main(int argc, char** argv) {
    CLI::App app{"medsil: k-medoids clustering by direct Medoid Silhouette optimization"};
    app.require_subcommand(1);

    RunConfig run_config;
    auto* run_cmd = app.add_subcommand("run", "cluster one data set and print a JSON report");
    run_cmd->add_option("--input", run_config.input, "CSV file of points, or a square matrix with --precomputed")
        ->required();
    run_cmd->add_flag("--precomputed", run_config.precomputed, "input is a dissimilarity matrix");
    run_cmd->add_option("--metric", run_config.metric, "euclidean, sqeuclidean, manhattan, cosine");
    run_cmd->add_option("--k", run_config.k, "number of clusters")->required();
    run_cmd->add_option("--algo", run_config.algo, "pamsil, pammedsil, fastmsc, fastermsc");
    run_cmd->add_option("--init", run_config.init, "build or random");
    run_cmd->add_option("--seed", run_config.seed, "seed of the first restart");
    run_cmd->add_option("--restarts", run_config.restarts, "number of restarts (seeds seed, seed+1, ...)");
    run_cmd->add_option("--max-iter", run_config.max_iter, "iteration limit per restart");
    run_cmd->add_option("--true-labels", run_config.true_labels, "reference labels, one per line (adds ARI/NMI)");
    run_cmd->add_option("--output", run_config.output, "report file (default: stdout)");
    run_cmd->add_flag("--lazy", run_config.lazy, "compute point distances on demand instead of storing them");

    BenchConfig bench_config;
    std::string n_grid;
    std::string k_grid;
    std::string algos;
    auto* bench_cmd = app.add_subcommand("bench", "time optimizers over a grid of n and k, CSV output");
    bench_cmd->add_option("--input", bench_config.input, "CSV file; the first n rows are used per grid cell")
        ->required();
    bench_cmd->add_flag("--precomputed", bench_config.precomputed, "input is a dissimilarity matrix");
    bench_cmd->add_option("--metric", bench_config.metric, "euclidean, sqeuclidean, manhattan, cosine");
    bench_cmd->add_option("--n-grid", n_grid, "comma-separated sample sizes")->required();
    bench_cmd->add_option("--k-grid", k_grid, "comma-separated cluster counts")->required();
    bench_cmd->add_option("--algos", algos, "comma-separated algorithms")->required();
    bench_cmd->add_option("--init", bench_config.init, "build or random (default random)");
    bench_cmd->add_option("--seed", bench_config.seed, "seed of the first restart");
    bench_cmd->add_option("--restarts", bench_config.restarts, "runs per cell");
    bench_cmd->add_option("--max-iter", bench_config.max_iter, "iteration limit per run");
    bench_cmd->add_option("--timeout-sec", bench_config.timeout_sec, "per-run time budget");
    bench_cmd->add_option("--output", bench_config.output, "CSV file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const std::size_t threads = threads_from_env(1);
    try {
        if (*run_cmd) {
            run_config.threads = threads;
            const auto report = run(run_config);
            write_output(run_config.output, report.dump(2));
            return kOk;
        }
        bench_config.n_grid = parse_grid(n_grid, "--n-grid");
        bench_config.k_grid = parse_grid(k_grid, "--k-grid");
        bench_config.algos = split_names(algos);
        bench_config.threads = threads;
        if (bench_config.output) {
            std::ofstream out(*bench_config.output);
            if (!out) {
                throw CliError(kOutputFailure, "cannot write '" + *bench_config.output + "'");
            }
            bench(bench_config, out);
        } else {
            bench(bench_config, std::cout);
        }
        return kOk;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace medsil::cli
