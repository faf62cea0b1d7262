#include "ibc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

namespace ibc::experiments {

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<Complex> eigenvalues_of(const std::vector<Eigenpair>& pairs) {
    std::vector<Complex> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.lambda);
    return out;
}

}  // namespace

std::vector<MatchedMode> match_to_reference(const std::vector<Complex>& computed,
                                            const std::vector<Complex>& reference) {
    std::vector<MatchedMode> out;
    out.reserve(computed.size());
    for (const Complex& c : computed) {
        const std::size_t idx = nearest_reference(c, reference);
        out.push_back({c, reference[idx], idx, std::abs(reference[idx] - c), relative_error(c, reference[idx])});
    }
    return out;
}

bool spurious_free(double max_real_part, double a_norm, double factor) { return max_real_part < factor * a_norm; }

KSweep k_sweep(const ConstrainedSystem& sys, const std::vector<Complex>& reference, int k_max,
               const CompressOptions& opts) {
    if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
    KSweep sweep;
    sweep.problem = sys.labels().problem;
    sweep.n = sys.labels().grid_points;
    sweep.a_norm = spectral_norm(sys.a());

    for (int k = 1; k <= k_max; ++k) {
        std::vector<Complex> lambdas;
        try {
            lambdas = eigenvalues_of(eigenpairs(compress(sys, k, opts)));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoFeasibleSubspace && e.kind() != ErrorKind::DepthTooLarge) throw;
            sweep.terminated = "k=" + std::to_string(k) + ": " + e.what();
            break;
        }

        const auto matched = match_to_reference(lambdas, reference);
        KSweepRow row;
        row.k = k;
        row.r = static_cast<int>(lambdas.size());
        row.min_abs_error = std::numeric_limits<double>::infinity();
        std::size_t worst = 0;
        for (std::size_t i = 0; i < matched.size(); ++i) {
            if (matched[i].abs_error > row.max_abs_error) {
                row.max_abs_error = matched[i].abs_error;
                worst = i;
            }
            row.min_abs_error = std::min(row.min_abs_error, matched[i].abs_error);
            row.max_real_part = std::max(row.max_real_part, std::abs(matched[i].computed.real()));
        }
        row.proxy_real_error = std::abs((matched[worst].reference - matched[worst].computed).real());
        row.spurious_free = spurious_free(row.max_real_part, sweep.a_norm);
        sweep.rows.push_back(row);
    }
    return sweep;
}

std::vector<Complex> canuto_reference_covering(double bound) {
    const double spacing = 3.0 * std::numbers::pi / 8.0;
    return problems::canuto_reference(static_cast<int>(std::ceil(bound / spacing)) + 1);
}

std::vector<Complex> reference_covering(const problems::BenchmarkProblem& problem, double bound) {
    if (!problem.reference)
        throw Error(ErrorKind::InvalidArgument, "problem '" + problem.name + "' has no analytic reference spectrum");
    for (int count = 8;; count *= 2) {
        auto ref = problem.reference(count);
        double largest = 0.0;
        for (const Complex& z : ref) largest = std::max(largest, std::abs(z));
        if (largest >= bound) return ref;
    }
}

KSweep k_sweep(int n, int k_max, const CompressOptions& opts) {
    const auto sys = problems::canuto_hyperbolic(n);
    return k_sweep(sys, canuto_reference_covering(spectral_norm(sys.a())), k_max, opts);
}

std::vector<QualityCell> align_report(const QualityReport& report, const std::vector<Complex>& reference) {
    std::vector<QualityCell> out;
    out.reserve(report.modes.size());
    int rank = 0;
    for (const auto& m : report.modes) {
        const std::size_t idx = nearest_reference(m.lambda, reference);
        QualityCell cell;
        cell.k = report.k;
        cell.rank = ++rank;
        cell.lambda = m.lambda;
        cell.reference = reference[idx];
        cell.abs_error = std::abs(reference[idx] - m.lambda);
        cell.rel_error = relative_error(m.lambda, reference[idx]);
        cell.s_norm = m.s_norm;
        cell.theta = m.theta;
        cell.zero_mode = m.zero_mode;
        out.push_back(cell);
    }
    return out;
}

std::vector<QualityCell> k_quality_sweep(const ConstrainedSystem& sys, const std::vector<Complex>& reference,
                                         int k_max, const QualityOptions& opts) {
    if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
    std::vector<QualityCell> out;
    for (int k = 1; k <= k_max; ++k) {
        QualityReport report;
        try {
            report = quality_report(sys, k, opts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoFeasibleSubspace && e.kind() != ErrorKind::DepthTooLarge) throw;
            break;
        }
        const auto cells = align_report(report, reference);
        out.insert(out.end(), cells.begin(), cells.end());
    }
    return out;
}

std::vector<TsRow> tollmien_schlichting_sweep(const std::vector<int>& sizes, double alpha, double reynolds,
                                              const QualityOptions& opts) {
    std::vector<TsRow> out;
    for (int n : sizes) {
        const auto sys = problems::orr_sommerfeld(n, alpha, reynolds);
        const auto report = quality_report(sys, 1, opts);
        const ModeRecord* best = nullptr;
        for (const auto& m : report.modes) {
            if (!best || std::abs(m.lambda - problems::kTollmienSchlichting) <
                             std::abs(best->lambda - problems::kTollmienSchlichting))
                best = &m;
        }
        out.push_back({n, best->lambda, std::abs(best->lambda - problems::kTollmienSchlichting), best->theta});
    }
    return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "spearman needs two samples of equal length >= 2");
    return pearson(average_ranks(x), average_ranks(y));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "fit_slope needs two samples of equal length >= 2");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw Error(ErrorKind::InvalidArgument, "fit_slope needs distinct x values");
    return sxy / sxx;
}

}  // namespace ibc::experiments
