#include "ibc/chebyshev.hpp"

#include <cmath>
#include <numbers>

namespace ibc::chebyshev {

CollocationGrid::CollocationGrid(int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "collocation grid needs n >= 2 points");
    points_.resize(n);
    const int last = n - 1;
    for (int j = 0; j < n; ++j) {
        // Evaluate as sin(pi*(N-2j)/(2N)) so the nodes are exactly antisymmetric
        // and the midpoint is exactly zero.
        points_(j) = std::sin(std::numbers::pi * (last - 2.0 * j) / (2.0 * last));
    }
    points_(0) = 1.0;
    points_(last) = -1.0;
}

double QuadratureWeights::integrate(const RealVector& samples) const {
    if (samples.size() != weights.size())
        throw Error(ErrorKind::InvalidArgument, "quadrature sample count does not match weights");
    return weights.dot(samples);
}

CollocationGrid cheb_points(int n) { return CollocationGrid(n); }

DiffMatrix cheb_diff(const CollocationGrid& grid) {
    const int n = grid.size();
    const RealVector& x = grid.points();

    RealVector c(n);
    for (int i = 0; i < n; ++i) {
        const double edge = (i == 0 || i == n - 1) ? 2.0 : 1.0;
        c(i) = (i % 2 == 0 ? 1.0 : -1.0) * edge;
    }

    RealMatrix d = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            d(i, j) = (c(i) / c(j)) / (x(i) - x(j));
            row_sum += d(i, j);
        }
        d(i, i) = -row_sum;
    }
    return DiffMatrix{1, std::move(d), grid};
}

DiffMatrix diff_power(const DiffMatrix& d, int p) {
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "derivative order must be >= 1");
    if (d.order != 1) throw Error(ErrorKind::InvalidArgument, "diff_power expects a first-order matrix");
    RealMatrix result = d.entries;
    for (int i = 1; i < p; ++i) result = (result * d.entries).eval();
    return DiffMatrix{p, std::move(result), d.grid};
}

QuadratureWeights clenshaw_curtis(const CollocationGrid& grid) {
    const int n = grid.size();
    const int last = n - 1;
    RealVector w = RealVector::Zero(n);
    const double pi = std::numbers::pi;

    if (last % 2 == 0) {
        w(0) = w(last) = 1.0 / (static_cast<double>(last) * last - 1.0);
    } else {
        w(0) = w(last) = 1.0 / (static_cast<double>(last) * last);
    }
    for (int j = 1; j < last; ++j) {
        const double theta = pi * j / last;
        double v = 1.0;
        if (last % 2 == 0) {
            for (int k = 1; k < last / 2; ++k) v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
            v -= std::cos(last * theta) / (static_cast<double>(last) * last - 1.0);
        } else {
            for (int k = 1; k <= (last - 1) / 2; ++k) v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        }
        w(j) = 2.0 * v / last;
    }
    return QuadratureWeights{std::move(w)};
}

}  // namespace ibc::chebyshev
