#pragma once

#include "medsil/fit.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace medsil::cli {

inline constexpr const char* kReportSchema = "medsil.report/1";

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kUnreadableInput = 2,
    kInvalidConfig = 3,
    kUnknownName = 4,
    kMalformedInput = 5,
    kOutputFailure = 6,
    kInternal = 70,
};

class CliError : public std::runtime_error {
  public:
    CliError(ExitCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
    ExitCode code() const noexcept { return code_; }

  private:
    ExitCode code_;
};

struct RunConfig {
    std::string input;
    bool precomputed = false;
    std::string metric = "euclidean";
    std::size_t k = 0;
    std::string algo = "fastmsc";
    std::string init = "build";
    std::uint64_t seed = 0;
    std::size_t restarts = 1;
    std::size_t max_iter = 100;
    std::optional<std::string> true_labels;
    std::optional<std::string> output;
    bool lazy = false;
    std::size_t threads = 1;
};

struct BenchConfig {
    std::string input;
    bool precomputed = false;
    std::string metric = "euclidean";
    std::vector<std::size_t> n_grid;
    std::vector<std::size_t> k_grid;
    std::vector<std::string> algos;
    std::string init = "random";
    std::uint64_t seed = 0;
    std::size_t restarts = 1;
    std::size_t max_iter = 100;
    std::optional<double> timeout_sec;
    std::optional<std::string> output;
    std::size_t threads = 1;
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t k = 0;
    std::string algo;
    std::size_t restart = 0;
    bool timed_out = false;
    double wall_time = 0.0;  // seconds, optimizer only
    std::size_t iterations = 0;
    std::size_t swaps = 0;
    double ams = 0.0;
    std::optional<double> asw;
};

/// Worker count from MEDSIL_THREADS, or `fallback` when unset or invalid.
std::size_t threads_from_env(std::size_t fallback = 1);

/// One label per non-empty line; distinct strings map to 0, 1, ... in order of appearance.
std::vector<int> read_labels(const std::string& path);

/// Executes a run and returns the report; throws CliError.
nlohmann::json run(const RunConfig& config);

/// Writes the CSV header and one row per (n, k, algo, restart) cell to `out`, flushing after
/// each row. Returns the rows in output order; throws CliError.
std::vector<BenchRow> bench(const BenchConfig& config, std::ostream& out);

void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRow& row);

/// Full command line entry point; returns the process exit code.
int main(int argc, char** argv);

}  // namespace medsil::cli
