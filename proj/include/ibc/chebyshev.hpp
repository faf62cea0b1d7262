#pragma once

#include "ibc/common.hpp"

#include <span>

namespace ibc::chebyshev {

/// Chebyshev-Gauss-Lobatto nodes x_j = cos(j*pi/(n-1)), ordered from +1 down
/// to -1. Row 0 of every collocation operator therefore samples x = +1 and
/// row n-1 samples x = -1.
class CollocationGrid {
public:
    explicit CollocationGrid(int n);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(points_.size()); }
    [[nodiscard]] const RealVector& points() const noexcept { return points_; }
    [[nodiscard]] double operator[](int j) const { return points_(j); }

private:
    RealVector points_;
};

/// Dense collocation differentiation matrix of a given derivative order.
struct DiffMatrix {
    int order = 1;
    RealMatrix entries;
    CollocationGrid grid;
};

struct QuadratureWeights {
    RealVector weights;

    /// Weighted sum of samples.
    [[nodiscard]] double integrate(const RealVector& samples) const;
};

[[nodiscard]] CollocationGrid cheb_points(int n);

/// First-order differentiation matrix, exact for polynomials of degree < n.
/// Diagonal entries are the negated off-diagonal row sums.
[[nodiscard]] DiffMatrix cheb_diff(const CollocationGrid& grid);

/// p-th derivative as the p-th matrix power of the first-order matrix.
[[nodiscard]] DiffMatrix diff_power(const DiffMatrix& d, int p);

/// Clenshaw-Curtis weights on [-1, 1] for the grid's nodes.
[[nodiscard]] QuadratureWeights clenshaw_curtis(const CollocationGrid& grid);

}  // namespace ibc::chebyshev
