#include "ibc/problems.hpp"

#include <cmath>
#include <numbers>

namespace ibc::problems {

namespace {

using chebyshev::cheb_diff;
using chebyshev::cheb_points;

constexpr double kPi = std::numbers::pi;
constexpr double kBumpHalfWidth = 0.3;

void require_n(int n, int min_n, const char* what) {
    if (n < min_n) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(what) + " needs n >= " + std::to_string(min_n) + ", got " + std::to_string(n));
    }
}

}  // namespace

ConstrainedSystem heat_dirichlet(int n) {
    require_n(n, 4, "heat");
    const auto d = cheb_diff(cheb_points(n));
    const RealMatrix d2 = d.entries * d.entries;

    Matrix c = Matrix::Zero(2, n);
    c(0, 0) = 1.0;
    c(1, n - 1) = 1.0;
    return ConstrainedSystem(d2.cast<Complex>(), std::nullopt, std::move(c), {"heat", n, 1});
}

std::vector<Complex> heat_reference(int count) {
    std::vector<Complex> out;
    for (int m = 1; m <= count; ++m) out.emplace_back(-std::pow(m * kPi / 2.0, 2), 0.0);
    return out;
}

ConstrainedSystem canuto_hyperbolic(int n) {
    require_n(n, 4, "canuto");
    const RealMatrix d = cheb_diff(cheb_points(n)).entries;

    RealMatrix a(2 * n, 2 * n);
    a.topLeftCorner(n, n) = -0.5 * d;
    a.topRightCorner(n, n) = -d;
    a.bottomLeftCorner(n, n) = -d;
    a.bottomRightCorner(n, n) = -0.5 * d;

    Matrix c = Matrix::Zero(2, 2 * n);
    c(0, n - 1) = 1.0;
    c(1, 0) = 1.0;
    return ConstrainedSystem(a.cast<Complex>(), std::nullopt, std::move(c), {"canuto", n, 2});
}

std::vector<Complex> canuto_reference(int count) {
    std::vector<Complex> out;
    out.reserve(2 * count + 1);
    for (int k = -count; k <= count; ++k) out.emplace_back(0.0, 3.0 * kPi / 8.0 * k);
    return out;
}

ConstrainedSystem orr_sommerfeld(int n, double alpha, double reynolds) {
    require_n(n, 10, "orr-sommerfeld");
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
    if (!(reynolds > 0.0)) throw Error(ErrorKind::InvalidArgument, "reynolds must be positive");

    const auto grid = cheb_points(n);
    const RealMatrix d = cheb_diff(grid).entries;
    const RealMatrix d2 = d * d;
    const RealMatrix d4 = d2 * d2;
    const RealVector& z = grid.points();
    const Complex i{0.0, 1.0};
    const double a2 = alpha * alpha;

    Matrix e = (alpha * reynolds) * (d2 - a2 * RealMatrix::Identity(n, n)).cast<Complex>();

    Matrix a = d4.cast<Complex>();
    for (int row = 0; row < n; ++row) {
        const double u = 1.0 - z(row) * z(row);
        const Complex second = -2.0 * a2 - i * alpha * reynolds * u;
        const Complex zeroth = a2 * a2 + i * a2 * alpha * reynolds * u - 2.0 * i * reynolds * alpha;
        a.row(row) += second * d2.row(row).cast<Complex>();
        a(row, row) += zeroth;
    }

    Matrix c = Matrix::Zero(4, n);
    c(0, 0) = 1.0;
    c(1, n - 1) = 1.0;
    c.row(2) = d.row(0).cast<Complex>();
    c.row(3) = d.row(n - 1).cast<Complex>();
    return ConstrainedSystem(std::move(a), std::move(e), std::move(c), {"orr-sommerfeld", n, 1});
}

ConstrainedSystem acoustic_wave(int n) {
    require_n(n, 4, "acoustic");
    const RealMatrix d = cheb_diff(cheb_points(n)).entries;

    RealMatrix a = RealMatrix::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n) = d;
    a.bottomLeftCorner(n, n) = d;

    Matrix c = Matrix::Zero(2, 2 * n);
    c(0, n - 1) = 1.0;
    c(1, 0) = 1.0;
    return ConstrainedSystem(a.cast<Complex>(), std::nullopt, std::move(c), {"acoustic", n, 2});
}

std::vector<Complex> acoustic_reference_spectrum(int count) {
    std::vector<Complex> out{Complex(0.0, 0.0)};
    for (int m = 1; m <= count; ++m) {
        out.emplace_back(0.0, m * kPi / 2.0);
        out.emplace_back(0.0, -m * kPi / 2.0);
    }
    return out;
}

std::optional<InitialCondition> parse_initial_condition(const std::string& name) {
    if (name == "bump") return InitialCondition::Bump;
    if (name == "sine") return InitialCondition::Sine;
    return std::nullopt;
}

const char* to_string(InitialCondition ic) noexcept {
    return ic == InitialCondition::Bump ? "bump" : "sine";
}

double bump_ic(double x) {
    if (std::abs(x) >= kBumpHalfWidth) return 0.0;
    const double t = 1.0 - x / kBumpHalfWidth;
    return std::exp(-1.0 / std::pow(t, 4));
}

double sine_ic(double x) { return std::sin(-kPi * x + kPi); }

RealVector bump_ic(const chebyshev::CollocationGrid& grid) {
    return grid.points().unaryExpr([](double x) { return bump_ic(x); });
}

RealVector sine_ic(const chebyshev::CollocationGrid& grid) {
    return grid.points().unaryExpr([](double x) { return sine_ic(x); });
}

RealVector pressure_ic(InitialCondition ic, const chebyshev::CollocationGrid& grid) {
    return ic == InitialCondition::Bump ? bump_ic(grid) : sine_ic(grid);
}

RealVector sine_coefficients(InitialCondition ic, int n_modes, int quad_points) {
    if (n_modes < 1) throw Error(ErrorKind::InvalidArgument, "n_modes must be >= 1");
    // The bump is smooth on its closed support and zero outside, so the
    // quadrature runs over [-0.3, 0.3] only.
    const double lo = ic == InitialCondition::Bump ? -kBumpHalfWidth : -1.0;
    const double hi = ic == InitialCondition::Bump ? kBumpHalfWidth : 1.0;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);

    const auto nodes = cheb_points(quad_points);
    const RealVector weights = chebyshev::clenshaw_curtis(nodes).weights * half;
    RealVector x(quad_points);
    RealVector f(quad_points);
    for (int j = 0; j < quad_points; ++j) {
        x(j) = mid + half * nodes[j];
        f(j) = ic == InitialCondition::Bump ? bump_ic(x(j)) : sine_ic(x(j));
        // Open interval for the bump: the printed case split zeroes x = -0.3.
        if (ic == InitialCondition::Bump && j == quad_points - 1) f(j) = std::exp(-1.0 / 16.0);
    }

    RealVector coeffs(n_modes);
    for (int m = 1; m <= n_modes; ++m) {
        double acc = 0.0;
        for (int j = 0; j < quad_points; ++j) acc += weights(j) * f(j) * std::sin(m * kPi * (x(j) + 1.0) / 2.0);
        coeffs(m - 1) = acc;
    }
    return coeffs;
}

AcousticFields acoustic_reference(const RealVector& coefficients, double t, const chebyshev::CollocationGrid& grid) {
    const int n = grid.size();
    AcousticFields out{RealVector::Zero(n), RealVector::Zero(n)};
    for (Eigen::Index m = 1; m <= coefficients.size(); ++m) {
        const double am = coefficients(m - 1);
        if (am == 0.0) continue;
        const double k = m * kPi / 2.0;
        const double cos_t = std::cos(k * t);
        const double sin_t = std::sin(k * t);
        for (int j = 0; j < n; ++j) {
            const double phase = k * (grid[j] + 1.0);
            out.pressure(j) += am * cos_t * std::sin(phase);
            out.velocity(j) += am * sin_t * std::cos(phase);
        }
    }
    return out;
}

AcousticFields acoustic_reference(InitialCondition ic, double t, int n_modes, const chebyshev::CollocationGrid& grid) {
    return acoustic_reference(sine_coefficients(ic, n_modes), t, grid);
}

const std::vector<BenchmarkProblem>& registry() {
    static const std::vector<BenchmarkProblem> problems = {
        {"heat", "diffusion u_t = u_xx with Dirichlet walls", {"n"}, 4,
         [](const ProblemParams& p) { return heat_dirichlet(p.n); }, heat_reference},
        {"canuto", "two-field hyperbolic system with spurious collocation modes", {"n"}, 4,
         [](const ProblemParams& p) { return canuto_hyperbolic(p.n); }, canuto_reference},
        {"orr-sommerfeld", "Orr-Sommerfeld pencil for plane Poiseuille flow", {"n", "alpha", "reynolds"}, 10,
         [](const ProblemParams& p) { return orr_sommerfeld(p.n, p.alpha, p.reynolds); }, nullptr},
        {"acoustic", "1-D acoustic wave equation with pressure-release walls", {"n"}, 4,
         [](const ProblemParams& p) { return acoustic_wave(p.n); }, acoustic_reference_spectrum},
    };
    return problems;
}

const BenchmarkProblem* find_problem(const std::string& name) {
    for (const auto& p : registry())
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace ibc::problems
