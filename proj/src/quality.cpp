#include "ibc/quality.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace ibc {

namespace {

constexpr double kRealSpanTol = 1e-13;

// Orthonormal basis of span{Re u, Im u}.
RealMatrix real_span_basis(const Vector& u) {
    RealMatrix r(u.size(), 2);
    r.col(0) = u.real();
    r.col(1) = u.imag();
    Eigen::JacobiSVD<RealMatrix> svd(r, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0.0)) throw Error(ErrorKind::UndefinedSubspace, "zero vector does not span a subspace");
    const Eigen::Index dim = sv(1) > kRealSpanTol * sv(0) ? 2 : 1;
    return svd.matrixU().leftCols(dim);
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// A repeated eigenvalue at zero has an eigenspace, and the solver returns an
// arbitrary basis of it. Rotate that basis onto the right singular vectors
// of A M V so that a genuine null direction (A M v at rounding level)
// separates from the rest and can be recognized as a zero mode.
void resolve_null_cluster(std::vector<Eigenpair>& pairs, const ConstrainedSystem& sys, const CompressedSystem& comp,
                          double gap) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (std::abs(pairs[i].lambda) < gap) idx.push_back(i);
    if (idx.size() < 2) return;

    Matrix basis(comp.r(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = pairs[idx[c]].v;
    Eigen::JacobiSVD<Matrix> span(basis, Eigen::ComputeThinU);
    const auto& sv = span.singularValues();
    // Nearly parallel vectors mean a defective eigenvalue; leave it alone.
    if (sv(sv.size() - 1) < 1e-6 * sv(0)) return;

    const Matrix q = span.matrixU();
    Eigen::JacobiSVD<Matrix> image(Matrix(sys.a() * (comp.m * q)), Eigen::ComputeThinV);
    const Matrix rotated = q * image.matrixV();
    for (std::size_t c = 0; c < idx.size(); ++c) {
        Vector v = rotated.col(static_cast<Eigen::Index>(c));
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        v *= std::conj(v(big)) / std::abs(v(big));
        v /= v.norm();
        if (comp.real) v = v.real().cast<Complex>().normalized();
        const Complex lambda = v.dot(comp.a_k * v);
        pairs[idx[c]] = {comp.real ? Complex(lambda.real(), 0.0) : lambda, std::move(v)};
    }
}

}  // namespace

std::vector<Eigenpair> eigenpairs(const CompressedSystem& comp, double mass_cond_limit) {
    if (comp.r() < 1) throw Error(ErrorKind::InvalidArgument, "compressed system is empty");

    Eigen::VectorXcd values;
    Matrix vectors;

    if (comp.e_k) {
        const Matrix& ek = *comp.e_k;
        Eigen::JacobiSVD<Matrix> svd(ek);
        const auto& sv = svd.singularValues();
        const double smin = sv(sv.size() - 1);
        if (!(smin > 0.0) || sv(0) / smin > mass_cond_limit) {
            throw Error(ErrorKind::IllConditionedMass,
                        "compressed mass operator condition number exceeds " + std::to_string(mass_cond_limit));
        }
        const Matrix reduced = ek.partialPivLu().solve(comp.a_k);
        Eigen::ComplexEigenSolver<Matrix> solver(reduced, true);
        values = solver.eigenvalues();
        vectors = solver.eigenvectors();
    } else if (comp.real) {
        Eigen::EigenSolver<RealMatrix> solver(comp.a_k.real(), true);
        values = solver.eigenvalues();
        vectors = solver.eigenvectors();
    } else {
        Eigen::ComplexEigenSolver<Matrix> solver(comp.a_k, true);
        values = solver.eigenvalues();
        vectors = solver.eigenvectors();
    }

    std::vector<Eigenpair> out;
    out.reserve(values.size());
    for (Eigen::Index j = 0; j < values.size(); ++j) {
        Vector v = vectors.col(j);
        v /= v.norm();
        out.push_back({values(j), std::move(v)});
    }
    return out;
}

double derivative_violation(const ConstrainedSystem& sys, const CompressedSystem& comp, const Vector& v) {
    if (sys.has_mass()) {
        throw Error(ErrorKind::UnsupportedForGeneralized,
                    "the derivative test needs an explicit time derivative and does not apply with a mass operator");
    }
    return (sys.c() * (sys.a() * (comp.m * v))).norm();
}

double grassmann_distance(const Vector& u1, const Vector& u2) {
    if (u1.size() != u2.size()) throw Error(ErrorKind::InvalidArgument, "vectors must have equal length");
    RealMatrix big = real_span_basis(u1);
    RealMatrix small = real_span_basis(u2);
    if (big.cols() < small.cols()) std::swap(big, small);

    const RealMatrix proj = big.transpose() * small;
    const RealMatrix residual = small - big * proj;

    // Cosines descending, sines ascending: both index the same principal angles.
    const RealVector cosines = Eigen::JacobiSVD<RealMatrix>(proj).singularValues();
    RealVector sines = Eigen::JacobiSVD<RealMatrix>(residual).singularValues();
    std::sort(sines.data(), sines.data() + sines.size());

    double sum_sq = 0.0;
    for (Eigen::Index i = 0; i < small.cols(); ++i) {
        const double c = clamp_unit(cosines(i));
        const double s = clamp_unit(sines(i));
        const double angle = c * c > 0.5 ? std::asin(s) : std::acos(c);
        sum_sq += angle * angle;
    }
    return std::sqrt(sum_sq);
}

AngleResult mode_angle(const ConstrainedSystem& sys, const CompressedSystem& comp, const Vector& v,
                       double zero_floor, std::optional<double> a_norm) {
    const Vector w = comp.m * v;
    const Vector aw = sys.a() * w;
    const double norm_a = a_norm ? *a_norm : spectral_norm(sys.a());
    if (aw.norm() < zero_floor * norm_a * w.norm()) return {0.0, true};
    const Vector lhs = sys.e() ? Vector(*sys.e() * w) : w;
    return {grassmann_distance(lhs, aw), false};
}

QualityReport quality_report(const ConstrainedSystem& sys, int k, const QualityOptions& opts) {
    return quality_report(sys, compress(sys, k, opts.compress), opts);
}

QualityReport quality_report(const ConstrainedSystem& sys, const CompressedSystem& comp, const QualityOptions& opts) {
    QualityReport report;
    report.problem = sys.labels().problem;
    report.n = sys.dimension();
    report.k = comp.k;
    report.r = comp.r();
    report.real = comp.real;
    report.options = opts;

    const double norm_a = spectral_norm(sys.a());
    const double norm_ak = spectral_norm(comp.a_k);
    auto pairs = eigenpairs(comp, opts.mass_cond_limit);
    if (!sys.has_mass()) resolve_null_cluster(pairs, sys, comp, opts.cluster_gap * norm_ak);

    report.modes.reserve(pairs.size());
    for (const auto& [lambda, v] : pairs) {
        ModeRecord rec;
        rec.lambda = lambda;
        rec.v = v;
        rec.w = comp.m * v;
        if (!sys.has_mass()) rec.s_norm = derivative_violation(sys, comp, v);
        const AngleResult angle = mode_angle(sys, comp, v, opts.zero_floor, norm_a);
        rec.theta = angle.theta;
        rec.zero_mode = angle.zero_mode;
        report.modes.push_back(std::move(rec));
    }

    const double gap = opts.cluster_gap * norm_ak;
    for (std::size_t i = 0; i < report.modes.size(); ++i) {
        for (std::size_t j = i + 1; j < report.modes.size(); ++j) {
            if (std::abs(report.modes[i].lambda - report.modes[j].lambda) < gap) {
                report.modes[i].clustered = report.modes[j].clustered = true;
                report.multiplicity_warning = true;
            }
        }
    }

    std::stable_sort(report.modes.begin(), report.modes.end(), [](const ModeRecord& a, const ModeRecord& b) {
        return std::make_tuple(!a.zero_mode, a.theta, std::abs(a.lambda.imag()), std::abs(a.lambda.real())) <
               std::make_tuple(!b.zero_mode, b.theta, std::abs(b.lambda.imag()), std::abs(b.lambda.real()));
    });
    return report;
}

double relative_error(Complex computed, Complex reference) {
    const double abs_err = std::abs(reference - computed);
    const double scale = std::abs(reference);
    return scale == 0.0 ? abs_err : abs_err / scale;
}

std::size_t nearest_reference(Complex value, const std::vector<Complex>& reference) {
    if (reference.empty()) throw Error(ErrorKind::InvalidArgument, "reference spectrum is empty");
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = std::abs(reference[i] - value);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

}  // namespace ibc
