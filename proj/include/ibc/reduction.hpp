#pragma once

#include "ibc/chebyshev.hpp"
#include "ibc/problems.hpp"
#include "ibc/quality.hpp"

#include <string>
#include <vector>

namespace ibc::reduction {

/// Modal truncation built from the best-ranked modes of a quality report.
struct ReducedModel {
    int requested = 0;              ///< r asked for
    std::vector<Complex> lambdas;   ///< retained eigenvalues, report order
    std::vector<double> thetas;
    std::vector<std::size_t> indices;  ///< positions in the report's mode list
    Matrix v_basis;                 ///< compressed eigenvectors, one per column
    Matrix lift;                    ///< physical mode shapes M v, one per column
    bool real = false;              ///< set closed under conjugation; outputs are real

    [[nodiscard]] int r() const noexcept { return static_cast<int>(lambdas.size()); }
    [[nodiscard]] int state_dimension() const noexcept { return static_cast<int>(lift.rows()); }

    /// Least-squares modal coefficients of a physical state.
    [[nodiscard]] Vector restrict_state(const Vector& x) const;
    [[nodiscard]] Vector lift_state(const Vector& c) const { return lift * c; }
};

/// Keeps the r best modes of the report (its order: zero modes, then theta)
/// and, for real systems, adds any missing conjugate partners.
[[nodiscard]] ReducedModel truncate(const QualityReport& report, int r);

enum class Method { ModalExact, Rk4 };

[[nodiscard]] const char* to_string(Method m) noexcept;

struct SimulationResult {
    Method method = Method::ModalExact;
    std::vector<double> times;
    std::vector<Vector> states;     ///< full state (all fields stacked) per time
    int fields = 1;
    double restrict_residual = 0.0;  ///< ||x0 - lift(restrict(x0))|| / ||x0||
    double imag_residue = 0.0;       ///< largest ||Im x(t)|| / ||x0|| before it was dropped
    std::vector<std::string> warnings;

    /// Field `f` (0-based) of the state at time index `i`.
    [[nodiscard]] Vector field(std::size_t i, int f) const;
};

struct ModalOptions {
    double restrict_warn = 1e-6;  ///< relative restrict residual that triggers a warning
    double imag_tol = 1e-9;       ///< relative imaginary residue allowed for real models
};

[[nodiscard]] SimulationResult simulate_modal(const ReducedModel& model, const Vector& x0,
                                              const std::vector<double>& times, int fields = 1,
                                              const ModalOptions& opts = {});
[[nodiscard]] SimulationResult simulate_modal(const ReducedModel& model, const Vector& x0, double t,
                                              int fields = 1, const ModalOptions& opts = {});

/// Classical fixed-step RK4 for x' = A x. The step is shrunk so that it
/// divides t_end. Throws Divergence once ||x|| exceeds 1e6 ||x0||.
[[nodiscard]] SimulationResult simulate_rk4(const Matrix& a, const Vector& x0, double t_end, double dt,
                                            int fields = 1);

/// sqrt(sum w |ref - approx|^2) / sqrt(sum w |ref|^2).
[[nodiscard]] double relative_l2_error(const Vector& approx, const Vector& reference,
                                       const chebyshev::QuadratureWeights& weights);
[[nodiscard]] double relative_l2_error(const RealVector& approx, const RealVector& reference,
                                       const chebyshev::QuadratureWeights& weights);

struct SweepRow {
    int r = 0;           ///< requested
    int retained = 0;    ///< after conjugate closure
    double error = 0.0;  ///< relative pressure error at t
    double theta_r = 0.0;  ///< theta of the r-th ranked mode
    double restrict_residual = 0.0;
};

struct ReductionSweep {
    std::string problem;
    int n = 0;
    problems::InitialCondition ic = problems::InitialCondition::Sine;
    double t = 1.0;
    double full_error = 0.0;  ///< all modes retained
    std::vector<double> thetas;  ///< full ranked theta sequence
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    int k = 1;
    int reference_modes = 1500;
    QualityOptions quality;
};

/// Acoustic wave only: truncate to each r, evolve to t, and compare the
/// pressure with the eigenfunction-expansion solution. Empty r_values
/// means every r from 1 to the number of modes.
[[nodiscard]] ReductionSweep reduction_sweep(const std::string& problem, int n, problems::InitialCondition ic,
                                             std::vector<int> r_values, double t = 1.0,
                                             const SweepOptions& opts = {});

/// Same, for a report already computed on acoustic_wave(n).
[[nodiscard]] ReductionSweep reduction_sweep(const QualityReport& report, problems::InitialCondition ic,
                                             std::vector<int> r_values, double t = 1.0,
                                             const SweepOptions& opts = {});

}  // namespace ibc::reduction
