#pragma once

#include "ibc/constrained.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ibc {

struct Eigenpair {
    Complex lambda;
    Vector v;  ///< unit 2-norm
};

struct QualityOptions {
    CompressOptions compress;
    double zero_floor = 1e-13;       ///< ||A M v|| below zero_floor * ||A|| * ||M v|| marks a zero mode
    double theta_threshold = 1e-3;   ///< "good" modes have theta at or below this (a convention, not a derived bound)
    double mass_cond_limit = 1e12;
    double cluster_gap = 1e-8;       ///< relative to ||A_k||
};

/// One computed eigenpair with both quality scores.
struct ModeRecord {
    Complex lambda;
    Vector v;                       ///< compressed eigenvector
    Vector w;                       ///< lifted vector M v
    std::optional<double> s_norm;   ///< absent for generalized problems
    double theta = 0.0;             ///< 0 for zero modes (not computed)
    bool zero_mode = false;
    bool clustered = false;         ///< another eigenvalue within the cluster gap

    [[nodiscard]] bool good(double threshold) const { return zero_mode || theta <= threshold; }
};

struct QualityReport {
    std::string problem;
    int n = 0;  ///< state dimension of the uncompressed system
    int k = 0;
    int r = 0;
    bool real = false;  ///< compressed system is real, so complex modes come in conjugate pairs
    QualityOptions options;
    bool multiplicity_warning = false;
    std::vector<ModeRecord> modes;  ///< zero modes first, then ascending theta
};

struct AngleResult {
    double theta = 0.0;
    bool zero_mode = false;
};

/// Full spectrum of A_k, or of the pencil (A_k, E_k) reduced as E_k^{-1} A_k.
/// Real compressed systems keep conjugate pairs adjacent and exactly conjugate.
[[nodiscard]] std::vector<Eigenpair> eigenpairs(const CompressedSystem& comp, double mass_cond_limit = 1e12);

/// ||C A M v||: violation of the first implicit constraint.
[[nodiscard]] double derivative_violation(const ConstrainedSystem& sys, const CompressedSystem& comp,
                                          const Vector& v);

/// Grassmann distance between the real spans {Re u1, Im u1} and {Re u2, Im u2}.
/// A span whose second direction is negligible (< 1e-13 relative) is treated
/// as one-dimensional. Small angles come from sines and large ones from
/// cosines, so exact coincidence yields distances at rounding level.
[[nodiscard]] double grassmann_distance(const Vector& u1, const Vector& u2);

/// Angle between span{M v} (span{E M v} with a mass operator) and span{A M v}.
[[nodiscard]] AngleResult mode_angle(const ConstrainedSystem& sys, const CompressedSystem& comp, const Vector& v,
                                     double zero_floor = 1e-13, std::optional<double> a_norm = std::nullopt);

[[nodiscard]] QualityReport quality_report(const ConstrainedSystem& sys, int k, const QualityOptions& opts = {});

/// Scores an already compressed system.
[[nodiscard]] QualityReport quality_report(const ConstrainedSystem& sys, const CompressedSystem& comp,
                                           const QualityOptions& opts = {});

/// |reference - computed| / |reference|, or the absolute error when reference == 0.
[[nodiscard]] double relative_error(Complex computed, Complex reference);

/// Index of the reference eigenvalue closest to `value`; first index wins ties.
[[nodiscard]] std::size_t nearest_reference(Complex value, const std::vector<Complex>& reference);

}  // namespace ibc
