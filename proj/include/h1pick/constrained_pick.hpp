#pragma once

#include <map>
#include <optional>
#include <string_view>

#include "h1pick/classical_pick.hpp"
#include "h1pick/kernels.hpp"
#include "h1pick/numerics.hpp"

namespace h1pick {

/// Which criterion produced a feasibility decision.
enum class Criterion {
    /// PSD test of [(A^2 - w_i conj(w_j)) K(z_i, z_j)] over the kernel sphere.
    Family,
    /// Search for a Moebius parameter lambda making the reduced Pick matrix PSD.
    Moebius,
};

std::string_view to_string(Criterion c);

struct FeasibilityReport {
    PsdStatus status = PsdStatus::Feasible;
    /// Family: the parameter minimizing the min eigenvalue.
    std::optional<KernelParam> worst_param;
    /// Family: min over the grid of the min eigenvalue. Moebius: max over lambda.
    double min_eig = 0.0;
    /// max(1, max |entry|) of the matrix at the reported parameter.
    double scale = 1.0;
    /// Moebius: the accepted lambda.
    std::optional<DiskPoint> witness_lambda;
    Criterion via = Criterion::Family;
    /// Grid used for the scan.
    SphereDomain grid;
    /// True when the status is backed by an explicit witness: an infeasible
    /// family parameter, or a Moebius lambda. A family "feasible" only means
    /// no violation was found at this grid density.
    bool certified = false;
};

/// Min eigenvalue of the family Pick matrix at one kernel parameter.
double family_min_eig(const ScalarProblem& prob, double bound, const KernelParam& p);

FeasibilityReport family_feasibility(const ScalarProblem& prob, double bound, const SphereDomain& dom = {});

/// Largest A^2 for which the family matrix at p is singular; computed on the
/// span of the nonzero kernel vectors when the Gram matrix degenerates.
double compressed_norm_squared(const ScalarProblem& prob, const KernelParam& p);

struct NormResult {
    double value = 0.0;
    KernelParam param;
};

/// Smallest bound admitting an interpolant, as a sup over the kernel sphere.
NormResult minimal_norm(const ScalarProblem& prob, const SphereDomain& dom = {});

/// [(z_i^2 conj(z_j)^2 - phi_lambda(w_i) conj(phi_lambda(w_j))) / (1 - z_i conj(z_j))]
HermitianMatrix moebius_criterion_matrix(const ScalarProblem& prob, Complex lambda);

struct MoebiusSearch {
    std::optional<DiskPoint> lambda;
    DiskPoint best_lambda;
    double best_min_eig = 0.0;
    double scale = 1.0;
};

/// Maximizes the min eigenvalue of the Moebius criterion matrix over lambda in
/// the disk. Targets must satisfy |w_i| <= 1. When a node sits at the origin
/// lambda is forced to the target there.
MoebiusSearch moebius_search_detail(const ScalarProblem& prob, const SphereDomain& dom = {});

/// The accepted lambda, if the criterion matrix is PSD within tolerance.
std::optional<DiskPoint> moebius_search(const ScalarProblem& prob, const SphereDomain& dom = {});

/// Decision through the Moebius criterion at bound A (targets divided by A).
FeasibilityReport moebius_feasibility(const ScalarProblem& prob, double bound, const SphereDomain& dom = {});

/// f(z) = A * phi_{-lambda}(z^2 h(z)) with h a Schur interpolant.
struct ConstrainedInterpolant {
    double scale = 1.0;
    DiskPoint lambda;
    SchurInterpolant inner;

    Complex operator()(Complex z) const;
};

struct Solution {
    ConstrainedInterpolant interpolant;
    double max_residual = 0.0;
    /// |f'(0)| from a four-point Cauchy rule at radius 1e-4.
    double derivative_at_zero = 0.0;
    SupNormEstimate sup_norm;
    double lambda_min_eig = 0.0;
};

/// Numerical |f'(0)| (four-point Cauchy rule at the given radius).
double derivative_at_origin(const std::function<Complex(Complex)>& f, double radius = 1e-4);

/// Constructs an interpolant with sup norm <= A and f'(0) = 0 and verifies
/// node residuals, the derivative and the boundary norm before returning.
Solution solve(const ScalarProblem& prob, double bound, const SphereDomain& dom = {});

/// Exact PSD test when a node is at the origin:
/// [(A^2 - u_a conj(u_b)) G_ab] over the basis 1, z, k_{z_2}, ..., k_{z_n},
/// with u = (w_1, w_1, w_2, ..., w_n) and w_1 the target at the origin.
HermitianMatrix zero_node_matrix(const ScalarProblem& prob, double bound);

/// Gram matrix [<v_b, v_a>] of 1, z, k_{z_2}, ..., k_{z_n}; nodes[0] must be 0.
ComplexMatrix zero_node_gram(const std::vector<DiskPoint>& nodes_zero_first);

/// Smallest A with zero_node_matrix PSD.
double minimal_norm_zero(const ScalarProblem& prob);

/// Returns the problem reordered so that the origin node comes first.
ScalarProblem zero_first(const ScalarProblem& prob);

/// Finitely supported Fourier series sum c_m e^{imt}.
struct FourierFunction {
    std::map<int, Complex> coefficients;

    /// Largest |m| with a nonzero coefficient (0 for the zero function).
    int top_frequency() const;
    Complex eval(double t) const;
};

/// ||(I - P) M_f P|| on frequencies -N..N, P projecting onto
/// span{alpha e_0 + beta e_1} + span{e_2, ..., e_N}.
double compressed_hankel_norm(const FourierFunction& f, int truncation, const KernelParam& p);

struct DistanceEstimate {
    double value = 0.0;
    /// |value(N) - value(N/2)|
    double error_estimate = 0.0;
    KernelParam param;
};

/// Distance from f to the bounded analytic functions with f'(0) = 0.
DistanceEstimate dist_to_subalgebra(const FourierFunction& f, int truncation, const SphereDomain& dom = {});

}  // namespace h1pick
