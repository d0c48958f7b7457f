#pragma once

#include <complex>

namespace h1pick {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Points of the open unit disk, kept at least 1e-12 away from the circle.
class DiskPoint {
public:
    static constexpr double kBoundaryMargin = 1e-12;

    DiskPoint() = default;
    DiskPoint(Complex value);  // NOLINT(google-explicit-constructor): throws if |value| > 1 - margin
    DiskPoint(double re, double im = 0.0) : DiskPoint(Complex(re, im)) {}

    Complex value() const noexcept { return value_; }
    operator Complex() const noexcept { return value_; }  // NOLINT(google-explicit-constructor)

    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

private:
    Complex value_{0.0, 0.0};
};

/// One kernel of the family, stored in the chart (r, theta) with
/// alpha = r e^{i theta}, beta = sqrt(1 - r^2) >= 0.
///
/// Kernels only depend on (alpha, beta) up to a common unimodular factor, so
/// beta is kept real and nonnegative. Every r = 1 point is the same kernel and
/// is canonicalized to theta = 0.
struct KernelParam {
    double r = 0.0;
    double theta = 0.0;

    Complex alpha() const noexcept { return std::polar(r, theta); }
    double beta() const noexcept;

    friend bool operator==(const KernelParam&, const KernelParam&) = default;
};

/// Canonicalizes (r, theta): theta reduced into [0, 2pi), r = 1 collapses to theta = 0.
KernelParam make_param(double r, double theta);

/// Canonical representative of the line through (alpha, beta); the pair is normalized first.
KernelParam param_from_pair(Complex alpha, Complex beta);

}  // namespace h1pick
