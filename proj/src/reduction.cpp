#include "ibc/reduction.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ibc::reduction {

namespace {

constexpr double kDivergenceGrowth = 1e6;

// Partner of mode i among the report's modes: exact conjugate for real
// eigensolvers, nearest otherwise.
std::size_t conjugate_partner(const std::vector<ModeRecord>& modes, std::size_t i) {
    const Complex target = std::conj(modes[i].lambda);
    std::size_t best = i;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < modes.size(); ++j) {
        if (j == i) continue;
        const double d = std::abs(modes[j].lambda - target);
        if (d < best_dist) {
            best_dist = d;
            best = j;
        }
    }
    return best;
}

}  // namespace

Vector ReducedModel::restrict_state(const Vector& x) const {
    if (x.size() != lift.rows()) throw Error(ErrorKind::InvalidArgument, "state dimension does not match the model");
    return lift.colPivHouseholderQr().solve(x);
}

ReducedModel truncate(const QualityReport& report, int r) {
    const int total = static_cast<int>(report.modes.size());
    if (r < 1 || r > total) {
        throw Error(ErrorKind::InvalidArgument,
                    "r must lie in [1, " + std::to_string(total) + "], got " + std::to_string(r));
    }

    std::vector<bool> keep(report.modes.size(), false);
    for (int i = 0; i < r; ++i) keep[i] = true;
    if (report.real) {
        for (int i = 0; i < r; ++i) {
            if (report.modes[i].lambda.imag() == 0.0) continue;
            keep[conjugate_partner(report.modes, i)] = true;
        }
    }

    ReducedModel model;
    model.requested = r;
    model.real = report.real;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (!keep[i]) continue;
        model.indices.push_back(i);
        model.lambdas.push_back(report.modes[i].lambda);
        model.thetas.push_back(report.modes[i].theta);
    }

    const auto cols = static_cast<Eigen::Index>(model.indices.size());
    const auto& first = report.modes.front();
    model.v_basis.resize(first.v.size(), cols);
    model.lift.resize(first.w.size(), cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        const auto& mode = report.modes[model.indices[c]];
        model.v_basis.col(c) = mode.v;
        model.lift.col(c) = mode.w;
    }
    return model;
}

const char* to_string(Method m) noexcept { return m == Method::ModalExact ? "modal-exact" : "rk4"; }

Vector SimulationResult::field(std::size_t i, int f) const {
    const Vector& x = states.at(i);
    const Eigen::Index len = x.size() / fields;
    if (f < 0 || f >= fields) throw Error(ErrorKind::InvalidArgument, "field index out of range");
    return x.segment(f * len, len);
}

SimulationResult simulate_modal(const ReducedModel& model, const Vector& x0, const std::vector<double>& times,
                                int fields, const ModalOptions& opts) {
    if (x0.size() != model.state_dimension())
        throw Error(ErrorKind::InvalidArgument, "initial state dimension does not match the model");
    if (fields < 1 || x0.size() % fields != 0)
        throw Error(ErrorKind::InvalidArgument, "state does not split into the requested number of fields");

    SimulationResult out;
    out.method = Method::ModalExact;
    out.fields = fields;
    out.times = times;

    const double x0_norm = x0.norm();
    const Vector c0 = model.restrict_state(x0);
    if (x0_norm > 0.0) out.restrict_residual = (x0 - model.lift * c0).norm() / x0_norm;
    if (out.restrict_residual > opts.restrict_warn) {
        out.warnings.push_back("initial condition poorly represented by the retained modes (residual " +
                               std::to_string(out.restrict_residual) + ")");
    }

    const Eigen::Map<const Eigen::VectorXcd> lambdas(model.lambdas.data(), model.r());
    for (double t : times) {
        const Vector ct = c0.cwiseProduct((lambdas * t).array().exp().matrix());
        Vector x = model.lift * ct;
        if (model.real) {
            const double residue = x0_norm > 0.0 ? x.imag().norm() / x0_norm : x.imag().norm();
            out.imag_residue = std::max(out.imag_residue, residue);
            x = x.real().cast<Complex>();
        }
        out.states.push_back(std::move(x));
    }
    if (model.real && out.imag_residue > opts.imag_tol) {
        out.warnings.push_back("imaginary residue " + std::to_string(out.imag_residue) +
                               " exceeds tolerance; conjugate closure may be incomplete");
    }
    return out;
}

SimulationResult simulate_modal(const ReducedModel& model, const Vector& x0, double t, int fields,
                                const ModalOptions& opts) {
    return simulate_modal(model, x0, std::vector<double>{t}, fields, opts);
}

SimulationResult simulate_rk4(const Matrix& a, const Vector& x0, double t_end, double dt, int fields) {
    if (a.rows() != a.cols() || a.rows() != x0.size())
        throw Error(ErrorKind::InvalidArgument, "A must be square and match the initial state");
    if (!(dt > 0.0) || !(t_end >= 0.0)) throw Error(ErrorKind::InvalidArgument, "need dt > 0 and t_end >= 0");
    if (fields < 1 || x0.size() % fields != 0)
        throw Error(ErrorKind::InvalidArgument, "state does not split into the requested number of fields");

    const long steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-12)));
    const double h = t_end / static_cast<double>(steps);
    const double limit = kDivergenceGrowth * x0.norm();

    Vector x = x0;
    for (long s = 0; s < steps; ++s) {
        const Vector k1 = a * x;
        const Vector k2 = a * (x + 0.5 * h * k1);
        const Vector k3 = a * (x + 0.5 * h * k2);
        const Vector k4 = a * (x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(x.norm()) || (limit > 0.0 && x.norm() > limit)) {
            throw Error(ErrorKind::Divergence, "RK4 diverged at t=" + std::to_string((s + 1) * h) +
                                                   "; reduce dt below the stability limit");
        }
    }

    SimulationResult out;
    out.method = Method::Rk4;
    out.fields = fields;
    out.times = {0.0, t_end};
    out.states = {x0, std::move(x)};
    return out;
}

double relative_l2_error(const Vector& approx, const Vector& reference, const chebyshev::QuadratureWeights& weights) {
    if (approx.size() != reference.size() || reference.size() != weights.weights.size())
        throw Error(ErrorKind::InvalidArgument, "field and weight dimensions must match");
    const RealVector& w = weights.weights;
    const double ref = std::sqrt(w.dot(reference.cwiseAbs2()));
    if (!(ref > 0.0)) throw Error(ErrorKind::UndefinedRelativeError, "reference field has zero norm");
    return std::sqrt(w.dot((reference - approx).cwiseAbs2())) / ref;
}

double relative_l2_error(const RealVector& approx, const RealVector& reference,
                         const chebyshev::QuadratureWeights& weights) {
    return relative_l2_error(Vector(approx.cast<Complex>()), Vector(reference.cast<Complex>()), weights);
}

ReductionSweep reduction_sweep(const std::string& problem, int n, problems::InitialCondition ic,
                               std::vector<int> r_values, double t, const SweepOptions& opts) {
    if (problem != "acoustic") {
        throw Error(ErrorKind::InvalidArgument,
                    "reduction sweeps need an analytic reference; only 'acoustic' provides one");
    }
    const auto sys = problems::acoustic_wave(n);
    return reduction_sweep(quality_report(sys, opts.k, opts.quality), ic, std::move(r_values), t, opts);
}

ReductionSweep reduction_sweep(const QualityReport& report, problems::InitialCondition ic, std::vector<int> r_values,
                               double t, const SweepOptions& opts) {
    if (report.problem != "acoustic") {
        throw Error(ErrorKind::InvalidArgument,
                    "reduction sweeps need an analytic reference; only 'acoustic' provides one");
    }
    const int n = report.n / 2;
    const auto grid = chebyshev::cheb_points(n);
    const auto weights = chebyshev::clenshaw_curtis(grid);

    const RealVector coeffs = problems::sine_coefficients(ic, opts.reference_modes);
    const RealVector p_ref = problems::acoustic_reference(coeffs, t, grid).pressure;

    Vector x0 = Vector::Zero(2 * n);
    x0.head(n) = problems::pressure_ic(ic, grid).cast<Complex>();

    ReductionSweep sweep;
    sweep.problem = report.problem;
    sweep.n = n;
    sweep.ic = ic;
    sweep.t = t;
    for (const auto& m : report.modes) sweep.thetas.push_back(m.theta);

    const int total = static_cast<int>(report.modes.size());
    auto run = [&](int r) {
        const ReducedModel model = truncate(report, r);
        const SimulationResult sim = simulate_modal(model, x0, t, 2);
        SweepRow row;
        row.r = r;
        row.retained = model.r();
        row.error = relative_l2_error(Vector(sim.field(0, 0)), Vector(p_ref.cast<Complex>()), weights);
        row.theta_r = report.modes[r - 1].theta;
        row.restrict_residual = sim.restrict_residual;
        return row;
    };

    sweep.full_error = run(total).error;
    if (r_values.empty()) {
        r_values.resize(total);
        for (int r = 1; r <= total; ++r) r_values[r - 1] = r;
    }
    for (int r : r_values) sweep.rows.push_back(run(r));
    return sweep;
}

}  // namespace ibc::reduction
