#pragma once

#include "ibc/problems.hpp"
#include "ibc/quality.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ibc::experiments {

struct MatchedMode {
    Complex computed;
    Complex reference;
    std::size_t reference_index = 0;
    double abs_error = 0.0;
    double rel_error = 0.0;
};

/// Pairs every computed eigenvalue with its nearest reference value.
[[nodiscard]] std::vector<MatchedMode> match_to_reference(const std::vector<Complex>& computed,
                                                          const std::vector<Complex>& reference);

struct KSweepRow {
    int k = 0;
    int r = 0;
    double proxy_real_error = 0.0;  ///< |Re(ref - computed)| at the worst-matched mode
    double max_abs_error = 0.0;
    double min_abs_error = 0.0;
    double max_real_part = 0.0;     ///< max |Re lambda| over the compressed spectrum
    bool spurious_free = false;     ///< max_real_part < 1e-8 ||A||
};

struct KSweep {
    std::string problem;
    int n = 0;
    double a_norm = 0.0;
    std::vector<KSweepRow> rows;
    std::optional<std::string> terminated;  ///< reason the sweep stopped before k_max
};

inline constexpr double kSpuriousFreeFactor = 1e-8;

/// max |Re lambda| < factor * ||A||.
[[nodiscard]] bool spurious_free(double max_real_part, double a_norm, double factor = kSpuriousFreeFactor);

/// k = 1..k_max against a fixed reference spectrum. Compression failures end the sweep.
[[nodiscard]] KSweep k_sweep(const ConstrainedSystem& sys, const std::vector<Complex>& reference, int k_max,
                             const CompressOptions& opts = {});

/// Canuto system at size n, with a reference set wide enough to cover ||A||.
[[nodiscard]] KSweep k_sweep(int n, int k_max, const CompressOptions& opts = {});

/// Canuto reference eigenvalues covering |lambda| <= bound.
[[nodiscard]] std::vector<Complex> canuto_reference_covering(double bound);

/// Smallest doubling of the problem's reference set whose largest modulus
/// reaches `bound`. Throws InvalidArgument if the problem has no reference.
[[nodiscard]] std::vector<Complex> reference_covering(const problems::BenchmarkProblem& problem, double bound);

struct QualityCell {
    int k = 0;
    int rank = 0;  ///< position in the quality ordering
    Complex lambda;
    Complex reference;
    double abs_error = 0.0;
    double rel_error = 0.0;
    std::optional<double> s_norm;
    double theta = 0.0;
    bool zero_mode = false;
};

/// Full quality report at each k, aligned to the reference spectrum.
[[nodiscard]] std::vector<QualityCell> k_quality_sweep(const ConstrainedSystem& sys,
                                                       const std::vector<Complex>& reference, int k_max,
                                                       const QualityOptions& opts = {});

/// Quality cells of a single report.
[[nodiscard]] std::vector<QualityCell> align_report(const QualityReport& report,
                                                    const std::vector<Complex>& reference);

struct TsRow {
    int n = 0;
    Complex lambda;
    double abs_error = 0.0;
    double theta = 0.0;
};

/// Orr-Sommerfeld mode nearest the Tollmien-Schlichting eigenvalue at each grid size.
[[nodiscard]] std::vector<TsRow> tollmien_schlichting_sweep(const std::vector<int>& sizes, double alpha = 1.0,
                                                            double reynolds = 10000.0,
                                                            const QualityOptions& opts = {});

/// Spearman rank correlation, ties given their average rank.
[[nodiscard]] double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of y against x.
[[nodiscard]] double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ibc::experiments
