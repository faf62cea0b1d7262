#pragma once

#include "ibc/common.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ibc::cli {

enum class Format { Csv, Json };

struct RunConfig {
    std::string command;
    std::string problem = "canuto";
    int n = 16;
    int k = 1;
    int k_max = 12;
    double alpha = 1.0;
    double reynolds = 10000.0;
    double null_tol = 1e-10;
    double zero_floor = 1e-13;
    double theta_threshold = 1e-3;
    std::string ic = "sine";
    std::vector<int> r_list;  ///< empty: every r
    double t_end = 1.0;
    bool grid = false;        ///< sweep-k: emit the full k x mode grid instead of summary rows
    Format format = Format::Csv;
    std::optional<std::string> out;  ///< stdout when absent
};

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Throws InvalidArgument on a non-positive parameter or an unknown problem/ic.
void validate(const RunConfig& config);

/// Each command writes its full report to `out` and throws ibc::Error on failure.
void cmd_analyze(const RunConfig& config, std::ostream& out);
void cmd_sweep_k(const RunConfig& config, std::ostream& out);
void cmd_reduce(const RunConfig& config, std::ostream& out);
void cmd_problems(const RunConfig& config, std::ostream& out);

/// Validates, dispatches on config.command, writes to config.out (or `out`),
/// and maps failures to exit codes with a message on `err`.
[[nodiscard]] int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// InvalidArgument and DepthTooLarge are usage errors; the rest are numerical.
[[nodiscard]] int exit_code_for(ErrorKind kind) noexcept;

/// 17 significant digits; "nan"/"inf"/"-inf" for non-finite values.
[[nodiscard]] std::string format_double(double x);

}  // namespace ibc::cli
