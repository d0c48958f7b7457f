#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "h1pick/param.hpp"

namespace h1pick {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Library-wide PSD convention: min eigenvalue >= -psd_tol * scale.
inline constexpr double kPsdTol = 1e-9;
/// Generalized eigenproblems need the right-hand matrix above this (times scale).
inline constexpr double kPsdFloor = 1e-12;
/// Rank threshold used when deflating singular Gram matrices.
inline constexpr double kRankTol = 1e-12;

enum class PsdStatus { Feasible, Marginal, Infeasible };

std::string_view to_string(PsdStatus status);

/// Feasible if min_eig > tol*scale, marginal within +/- tol*scale, infeasible below.
PsdStatus classify_psd(double min_eig, double scale, double psd_tol = kPsdTol);

/// Dense complex Hermitian matrix. Construction checks Hermiticity against
/// hermitian_tol * max(1, max |entry|) and then stores the exactly
/// Hermitian average (M + M^*)/2.
class HermitianMatrix {
public:
    static constexpr double kDefaultTol = 1e-10;

    explicit HermitianMatrix(const ComplexMatrix& entries, double hermitian_tol = kDefaultTol);

    static HermitianMatrix identity(Eigen::Index dim);

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const ComplexMatrix& entries() const noexcept { return entries_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    /// max(1, max |entry|)
    double scale() const noexcept { return scale_; }

private:
    ComplexMatrix entries_;
    double scale_ = 1.0;
};

double matrix_scale(const ComplexMatrix& m);

/// All eigenvalues, ascending.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h);

double min_eigenvalue(const HermitianMatrix& h);

/// Largest lambda with det(A - lambda B) = 0. B must be positive definite.
double generalized_max_eigenvalue(const HermitianMatrix& a, const HermitianMatrix& b);

/// Same quantity restricted to the range of B: eigenvectors of B with
/// eigenvalue <= rank_tol * scale are dropped before solving. Requires that
/// the null space of B is also annihilated by A, which holds for every
/// compressed-multiplier problem in this library. An empty range gives 0.
double deflated_max_eigenvalue(const HermitianMatrix& a, const HermitianMatrix& b,
                               double rank_tol = kRankTol);

/// Hermitian positive definite square root.
HermitianMatrix hpd_sqrt(const HermitianMatrix& b);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Search domain over the (r, theta) chart of the kernel sphere.
struct SphereDomain {
    int n_r = 64;
    int n_theta = 128;
    int refine_rounds = 3;
    double refine_shrink = 0.25;
    /// Number of distinct coarse local maxima that get refined.
    int refine_candidates = 4;
    /// Worker threads for the coarse grid; 0 picks hardware concurrency.
    int threads = 0;

    void validate() const;
};

/// Generic chart for grid-plus-refinement maximization: x in [x_lo, x_hi]
/// (clamped), y periodic with period y_period.
struct ChartGrid {
    double x_lo = 0.0;
    double x_hi = 1.0;
    double y_period = kTwoPi;
    SphereDomain grid;
};

struct ChartMax {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Coarse grid evaluation followed by local refinement around the best
/// coarse local maxima. Deterministic for a fixed chart; the coarse grid may
/// be evaluated on several threads, so the objective must be thread-safe.
ChartMax maximize_on_chart(const std::function<double(double, double)>& objective, const ChartGrid& chart);

struct SphereMax {
    KernelParam param;
    double value = 0.0;
    std::size_t evaluations = 0;
};

SphereMax maximize_over_sphere(const std::function<double(const KernelParam&)>& objective,
                               const SphereDomain& dom);

/// Radius of coarse row i: r = sin(psi) with psi uniform on [0, pi/2], last row exactly 1.
double sphere_grid_radius(int i, int n_r);

/// Coarse grid of canonical parameters in row-major (r outer, theta inner) order.
std::vector<KernelParam> sphere_grid(const SphereDomain& dom);

}  // namespace h1pick
