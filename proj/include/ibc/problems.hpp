#pragma once

#include "ibc/chebyshev.hpp"
#include "ibc/constrained.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ibc::problems {

/// Parameters accepted by the registry builders. alpha/reynolds are only
/// read by orr-sommerfeld.
struct ProblemParams {
    int n = 32;
    double alpha = 1.0;
    double reynolds = 10000.0;
};

struct BenchmarkProblem {
    std::string name;
    std::string description;
    std::vector<std::string> parameters;
    int min_n = 4;
    std::function<ConstrainedSystem(const ProblemParams&)> build;
    /// Analytic eigenvalues, when known; `count` bounds the mode index.
    std::function<std::vector<Complex>(int count)> reference;
};

/// u_t = u_xx on [-1,1] with u(+-1) = 0. C rows: x=+1 (index 0), x=-1 (index n-1).
[[nodiscard]] ConstrainedSystem heat_dirichlet(int n);
[[nodiscard]] std::vector<Complex> heat_reference(int count);

/// Two-field hyperbolic system with A = -[[1/2, 1], [1, 1/2]] (x) D and
/// psi_1 = 0 at both ends. State (z1, z2); C row 0 reads z1 at x=-1
/// (index n-1), row 1 reads z1 at x=+1 (index 0).
[[nodiscard]] ConstrainedSystem canuto_hyperbolic(int n);

/// i * 3*pi/8 * k for k = -count..count.
[[nodiscard]] std::vector<Complex> canuto_reference(int count);

/// Orr-Sommerfeld pencil for plane Poiseuille flow, u(z) = 1 - z^2:
///   E = alpha R (D^2 - alpha^2 I)
///   A = D^4 + diag(-2 alpha^2 - i alpha R u) D^2 + diag(alpha^4 + i alpha^3 R u - 2 i R alpha)
/// Clamped walls. C rows: psi(+1), psi(-1), psi'(+1), psi'(-1).
[[nodiscard]] ConstrainedSystem orr_sommerfeld(int n, double alpha, double reynolds);

/// Eigenvalue of the Tollmien-Schlichting mode at alpha = 1, R = 10000 in
/// this time convention.
inline constexpr Complex kTollmienSchlichting{0.00373967, -0.23752649};

/// Acoustic system p_t = u_x, u_t = p_x with p(+-1) = 0. State (p, u);
/// C row 0 reads p at x=-1 (index n-1), row 1 reads p at x=+1 (index 0).
[[nodiscard]] ConstrainedSystem acoustic_wave(int n);

/// 0 and +-i m pi/2 for m = 1..count.
[[nodiscard]] std::vector<Complex> acoustic_reference_spectrum(int count);

enum class InitialCondition { Bump, Sine };

[[nodiscard]] std::optional<InitialCondition> parse_initial_condition(const std::string& name);
[[nodiscard]] const char* to_string(InitialCondition ic) noexcept;

/// Pressure initial conditions (velocity starts at zero).
///   bump: exp(-1 / (1 - x/0.3)^4) for |x| < 0.3, else 0
///   sine: sin(pi - pi x)
[[nodiscard]] double bump_ic(double x);
[[nodiscard]] double sine_ic(double x);
[[nodiscard]] RealVector bump_ic(const chebyshev::CollocationGrid& grid);
[[nodiscard]] RealVector sine_ic(const chebyshev::CollocationGrid& grid);
[[nodiscard]] RealVector pressure_ic(InitialCondition ic, const chebyshev::CollocationGrid& grid);

/// Coefficients a_m = int_{-1}^{1} p0(x) sin(m pi (x+1)/2) dx, m = 1..n_modes,
/// from Clenshaw-Curtis quadrature over the IC's support with `quad_points` nodes.
[[nodiscard]] RealVector sine_coefficients(InitialCondition ic, int n_modes, int quad_points = 4097);

struct AcousticFields {
    RealVector pressure;
    RealVector velocity;
};

/// Eigenfunction-expansion solution at time t on the given grid:
///   p = sum a_m cos(w_m t) sin(m pi (x+1)/2),  u = sum a_m sin(w_m t) cos(m pi (x+1)/2),  w_m = m pi / 2.
[[nodiscard]] AcousticFields acoustic_reference(InitialCondition ic, double t, int n_modes,
                                                const chebyshev::CollocationGrid& grid);

/// Same, from precomputed coefficients.
[[nodiscard]] AcousticFields acoustic_reference(const RealVector& coefficients, double t,
                                                const chebyshev::CollocationGrid& grid);

/// Registered problems in stable order: heat, canuto, orr-sommerfeld, acoustic.
[[nodiscard]] const std::vector<BenchmarkProblem>& registry();
[[nodiscard]] const BenchmarkProblem* find_problem(const std::string& name);

}  // namespace ibc::problems
