#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace ibc {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Failure categories surfaced by the library. The CLI maps InvalidArgument
/// to a usage error and everything else to a numerical failure.
enum class ErrorKind {
    InvalidArgument,
    DepthTooLarge,
    NoFeasibleSubspace,
    IllConditionedMass,
    UnsupportedForGeneralized,
    UndefinedSubspace,
    UndefinedRelativeError,
    Divergence,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

/// Largest singular value.
[[nodiscard]] double spectral_norm(const Matrix& m);
[[nodiscard]] double spectral_norm(const RealMatrix& m);

/// True when every entry has an exactly zero imaginary part.
[[nodiscard]] bool is_real(const Matrix& m);

}  // namespace ibc
