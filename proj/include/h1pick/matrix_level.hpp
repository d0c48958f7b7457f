#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "h1pick/constrained_pick.hpp"
#include "h1pick/kernels.hpp"
#include "h1pick/numerics.hpp"

namespace h1pick {

/// Matrix-valued interpolation data: k x k targets at distinct nodes.
struct MatrixProblem {
    std::vector<DiskPoint> nodes;
    std::vector<ComplexMatrix> targets;
    int k = 1;
    std::optional<double> bound;

    MatrixProblem() = default;
    MatrixProblem(std::vector<DiskPoint> nodes, std::vector<ComplexMatrix> targets,
                  std::optional<double> bound = std::nullopt);

    std::size_t size() const noexcept { return nodes.size(); }
    std::optional<std::size_t> zero_index() const;

    /// k = 1 view as a scalar problem.
    static MatrixProblem from_scalar(const ScalarProblem& prob);
};

/// Block (i, j) = (A^2 I - W_i W_j^*) K(z_i, z_j).
HermitianMatrix block_family_matrix(const KernelParam& p, const MatrixProblem& prob, double bound);

/// Exact block test for data with a node at the origin (origin moved first).
HermitianMatrix zero_block_matrix(const MatrixProblem& prob, double bound);

struct MatrixZeroCheck {
    PsdStatus status = PsdStatus::Feasible;
    double min_eig = 0.0;
    double scale = 1.0;
};

MatrixZeroCheck matrix_feasible_zero(const MatrixProblem& prob, double bound);

/// Smallest A with zero_block_matrix PSD (the true minimal interpolation norm).
double minimal_matrix_norm_zero(const MatrixProblem& prob);

/// Gram matrix [<v_a, v_b>] of 1, z, k_{z_2}, ..., k_{z_n} in H^2 with the
/// convention <f, k_w> = f(w). nodes[0] must be the origin.
HermitianMatrix q_matrix_zero(const std::vector<DiskPoint>& nodes_zero_first);

/// Norm of the compressed multiplier at one kernel parameter, i.e.
/// || (Q^{-1/2} (x) I) diag(W_i) (Q^{1/2} (x) I) || with Q = [K(z_i, z_j)].
double phi_map_norm(const MatrixProblem& prob, const KernelParam& p);

/// Sup of phi_map_norm over the kernel sphere (a lower bound on the true norm).
NormResult phi_sup_norm(const MatrixProblem& prob, const SphereDomain& dom = {});

enum class ScanTargets {
    /// i.i.d. complex Gaussian entries, each W_i rescaled to norm 0.9 u with u ~ U(0, 1].
    Gaussian,
    /// c_i I_k with c_i drawn like a 1 x 1 Gaussian target.
    ScalarIdentity,
};

struct ScanRow {
    int trial = 0;
    double gap = 0.0;
    double a_true = 0.0;
    double a_family = 0.0;
};

struct ScanReport {
    std::vector<DiskPoint> nodes;
    int k = 1;
    std::uint64_t seed = 0;
    SphereDomain grid;
    std::vector<ScanRow> rows;
    /// Index into rows of the largest gap.
    std::size_t max_gap_row = 0;
    std::vector<ComplexMatrix> max_gap_targets;
    double min_gap = 0.0;
};

/// Random target tuples for one trial; trial t uses an engine seeded with (seed, t).
std::vector<ComplexMatrix> scan_targets(std::size_t n, int k, std::uint64_t seed, int trial,
                                        ScanTargets kind = ScanTargets::Gaussian);

/// For each trial compares the exact minimal norm (origin-node block test)
/// with the sup of the compressed-multiplier norms over the kernel sphere.
ScanReport counterexample_scan(const std::vector<DiskPoint>& nodes, int k, int trials, std::uint64_t seed,
                               const SphereDomain& dom = {}, ScanTargets kind = ScanTargets::Gaussian);

/// Header `trial,gap,A_true,A_family,seed`, one row per trial, 12 significant digits.
void write_scan_csv(std::ostream& os, const ScanReport& report);

}  // namespace h1pick
