#pragma once

#include "ibc/common.hpp"

#include <optional>
#include <string>

namespace ibc {

/// Reporting metadata attached to a discretized system.
struct SystemLabels {
    std::string problem;
    int grid_points = 0;  ///< collocation points per field
    int fields = 1;
};

/// Discretized PDE written as a DAE:  E z' = A z,  0 = C z.
/// An absent E means the identity. Entries may be complex; real-valued
/// systems are detected and handled on real arithmetic paths so conjugate
/// symmetry of their spectra is exact.
class ConstrainedSystem {
public:
    ConstrainedSystem(Matrix a, std::optional<Matrix> e, Matrix c, SystemLabels labels = {});

    [[nodiscard]] const Matrix& a() const noexcept { return a_; }
    [[nodiscard]] const std::optional<Matrix>& e() const noexcept { return e_; }
    [[nodiscard]] const Matrix& c() const noexcept { return c_; }
    [[nodiscard]] const SystemLabels& labels() const noexcept { return labels_; }

    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(a_.rows()); }
    [[nodiscard]] int constraint_count() const noexcept { return static_cast<int>(c_.rows()); }
    [[nodiscard]] bool has_mass() const noexcept { return e_.has_value(); }
    [[nodiscard]] bool is_real() const noexcept { return real_; }

private:
    Matrix a_;
    std::optional<Matrix> e_;
    Matrix c_;
    SystemLabels labels_;
    bool real_ = false;
};

/// Row blocks C, CA, ..., CA^{k-1}; block i is computed as block(i-1) * A.
struct ObservabilityMatrix {
    int k = 0;
    int block_rows = 0;
    Matrix entries;

    [[nodiscard]] auto block(int i) const { return entries.middleRows(i * block_rows, block_rows); }
};

struct CompressOptions {
    double null_tol = 1e-10;   ///< relative singular value cutoff
    bool scale_blocks = true;  ///< normalize each CA^i block before the rank decision
    int depth_cap = 0;         ///< refuse k*q >= cap; 0 selects 4n
};

/// Restriction of the DAE onto N(O_k): z = M y,  y' = (M^H A M) y.
struct CompressedSystem {
    Matrix m;       ///< n x r, orthonormal columns
    Matrix m_left;  ///< r x n left inverse (M^H)
    Matrix a_k;
    std::optional<Matrix> e_k;
    int k = 0;
    bool real = false;

    [[nodiscard]] int r() const noexcept { return static_cast<int>(m.cols()); }
};

struct DecompositionReport {
    double constraint_residual = 0.0;  ///< ||C M||
    double leakage = 0.0;              ///< ||N^H A M|| with N spanning Im(M)'s complement
    double a_norm = 0.0;
    bool invariant = false;            ///< leakage < tol * ||A||
};

[[nodiscard]] ObservabilityMatrix observability(const ConstrainedSystem& sys, int k, int depth_cap = 0);

/// Orthonormal basis of the numerical nullspace: right singular vectors whose
/// singular value is <= tol * sigma_max. Each column's largest-magnitude entry
/// is rotated to be real and positive. A zero matrix yields the identity; a
/// trivial nullspace yields a basis with zero columns.
[[nodiscard]] Matrix nullspace_basis(const Matrix& mat, double tol = 1e-10);
[[nodiscard]] RealMatrix nullspace_basis(const RealMatrix& mat, double tol = 1e-10);

/// Throws NoFeasibleSubspace when N(O_k) is trivial.
[[nodiscard]] CompressedSystem compress(const ConstrainedSystem& sys, int k, const CompressOptions& opts = {});

[[nodiscard]] DecompositionReport verify_decomposition(const ConstrainedSystem& sys, const CompressedSystem& comp,
                                                       double tol = 1e-10);

}  // namespace ibc
