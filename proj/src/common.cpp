#include "ibc/common.hpp"

#include <Eigen/SVD>

namespace ibc {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::DepthTooLarge: return "depth-too-large";
        case ErrorKind::NoFeasibleSubspace: return "no-feasible-subspace";
        case ErrorKind::IllConditionedMass: return "ill-conditioned-mass";
        case ErrorKind::UnsupportedForGeneralized: return "unsupported-for-generalized";
        case ErrorKind::UndefinedSubspace: return "undefined-subspace";
        case ErrorKind::UndefinedRelativeError: return "undefined-relative-error";
        case ErrorKind::Divergence: return "divergence";
    }
    return "unknown";
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (is_real(m)) return spectral_norm(RealMatrix(m.real()));
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double spectral_norm(const RealMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<RealMatrix> svd(m);
    return svd.singularValues()(0);
}

bool is_real(const Matrix& m) {
    return (m.imag().array() == 0.0).all();
}

}  // namespace ibc
