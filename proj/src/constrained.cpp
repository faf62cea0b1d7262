#include "ibc/constrained.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace ibc {

namespace {

constexpr double kRowRankTol = 1e-12;

template <typename Mat>
Mat nullspace_impl(const Mat& mat, double tol) {
    using Scalar = typename Mat::Scalar;
    const Eigen::Index cols = mat.cols();
    if (mat.size() == 0) throw Error(ErrorKind::InvalidArgument, "nullspace of an empty matrix");

    Eigen::JacobiSVD<Mat> svd(mat, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;

    Eigen::Index rank = 0;
    if (smax > 0.0) {
        while (rank < sv.size() && sv(rank) > tol * smax) ++rank;
    }
    Mat basis = svd.matrixV().rightCols(cols - rank);

    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        Eigen::Index pivot = 0;
        basis.col(j).cwiseAbs().maxCoeff(&pivot);
        const Scalar lead = basis(pivot, j);
        const Scalar phase = lead / std::abs(lead);
        basis.col(j) /= phase;
        if constexpr (Eigen::NumTraits<Scalar>::IsComplex) basis(pivot, j) = Scalar(std::abs(basis(pivot, j)), 0.0);
    }
    return basis;
}

template <typename Mat>
Mat stacked_blocks(const Mat& c, const Mat& a, int k) {
    const Eigen::Index q = c.rows();
    Mat out(k * q, a.cols());
    Mat block = c;
    out.topRows(q) = block;
    for (int i = 1; i < k; ++i) {
        block = (block * a).eval();
        out.middleRows(i * q, q) = block;
    }
    return out;
}

template <typename Mat>
void scale_blocks_inplace(Mat& stack, Eigen::Index q) {
    for (Eigen::Index i = 0; i * q < stack.rows(); ++i) {
        auto blk = stack.middleRows(i * q, q);
        const double nrm = blk.norm();
        if (nrm > 0.0) blk /= nrm;
    }
}

int resolve_cap(const ConstrainedSystem& sys, int depth_cap) {
    return depth_cap > 0 ? depth_cap : 4 * sys.dimension();
}

}  // namespace

ConstrainedSystem::ConstrainedSystem(Matrix a, std::optional<Matrix> e, Matrix c, SystemLabels labels)
    : a_(std::move(a)), e_(std::move(e)), c_(std::move(c)), labels_(std::move(labels)) {
    const auto n = a_.rows();
    if (n == 0 || a_.cols() != n) throw Error(ErrorKind::InvalidArgument, "A must be a nonempty square matrix");
    if (e_ && (e_->rows() != n || e_->cols() != n))
        throw Error(ErrorKind::InvalidArgument, "E must match the dimension of A");
    if (c_.cols() != n) throw Error(ErrorKind::InvalidArgument, "C must have as many columns as A");
    if (c_.rows() < 1 || c_.rows() >= n)
        throw Error(ErrorKind::InvalidArgument, "constraint count q must satisfy 1 <= q < n");

    Eigen::JacobiSVD<Matrix> svd(c_);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= kRowRankTol * sv(0))
        throw Error(ErrorKind::InvalidArgument, "C does not have full row rank");

    real_ = ibc::is_real(a_) && ibc::is_real(c_) && (!e_ || ibc::is_real(*e_));
}

ObservabilityMatrix observability(const ConstrainedSystem& sys, int k, int depth_cap) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "observability depth k must be >= 1");
    const int q = sys.constraint_count();
    const int cap = resolve_cap(sys, depth_cap);
    if (static_cast<long>(k) * q >= cap) {
        throw Error(ErrorKind::DepthTooLarge, "observability depth k=" + std::to_string(k) + " gives " +
                                                  std::to_string(k * q) + " rows, at or above the cap of " +
                                                  std::to_string(cap));
    }
    ObservabilityMatrix obs;
    obs.k = k;
    obs.block_rows = q;
    if (sys.is_real()) {
        obs.entries = stacked_blocks<RealMatrix>(sys.c().real(), sys.a().real(), k).cast<Complex>();
    } else {
        obs.entries = stacked_blocks<Matrix>(sys.c(), sys.a(), k);
    }
    return obs;
}

Matrix nullspace_basis(const Matrix& mat, double tol) {
    if (is_real(mat)) return nullspace_impl<RealMatrix>(mat.real(), tol).cast<Complex>();
    return nullspace_impl<Matrix>(mat, tol);
}

RealMatrix nullspace_basis(const RealMatrix& mat, double tol) { return nullspace_impl<RealMatrix>(mat, tol); }

CompressedSystem compress(const ConstrainedSystem& sys, int k, const CompressOptions& opts) {
    const ObservabilityMatrix obs = observability(sys, k, opts.depth_cap);
    const int q = sys.constraint_count();

    CompressedSystem comp;
    comp.k = k;
    comp.real = sys.is_real();

    if (comp.real) {
        RealMatrix stack = obs.entries.real();
        if (opts.scale_blocks) scale_blocks_inplace(stack, q);
        const RealMatrix m = nullspace_impl<RealMatrix>(stack, opts.null_tol);
        if (m.cols() == 0) {
            throw Error(ErrorKind::NoFeasibleSubspace,
                        "N(O_k) is trivial at k=" + std::to_string(k) +
                            ": the constrained system only admits the zero solution");
        }
        const RealMatrix ml = m.transpose();
        comp.a_k = (ml * sys.a().real() * m).cast<Complex>();
        if (sys.e()) comp.e_k = (ml * sys.e()->real() * m).cast<Complex>();
        comp.m = m.cast<Complex>();
        comp.m_left = ml.cast<Complex>();
    } else {
        Matrix stack = obs.entries;
        if (opts.scale_blocks) scale_blocks_inplace(stack, q);
        Matrix m = nullspace_impl<Matrix>(stack, opts.null_tol);
        if (m.cols() == 0) {
            throw Error(ErrorKind::NoFeasibleSubspace,
                        "N(O_k) is trivial at k=" + std::to_string(k) +
                            ": the constrained system only admits the zero solution");
        }
        comp.m_left = m.adjoint();
        comp.a_k = comp.m_left * sys.a() * m;
        if (sys.e()) comp.e_k = comp.m_left * (*sys.e()) * m;
        comp.m = std::move(m);
    }
    return comp;
}

DecompositionReport verify_decomposition(const ConstrainedSystem& sys, const CompressedSystem& comp, double tol) {
    DecompositionReport rep;
    rep.constraint_residual = spectral_norm(Matrix(sys.c() * comp.m));
    rep.a_norm = spectral_norm(sys.a());

    const Eigen::Index n = comp.m.rows();
    if (comp.m.cols() < n) {
        // Complement of Im(M): nullspace of M^H.
        const Matrix complement = nullspace_basis(Matrix(comp.m.adjoint()), 1e-12);
        rep.leakage = spectral_norm(Matrix(complement.adjoint() * sys.a() * comp.m));
    }
    rep.invariant = rep.leakage < tol * rep.a_norm;
    return rep;
}

}  // namespace ibc
