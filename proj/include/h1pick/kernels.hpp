#pragma once

#include <optional>
#include <vector>

#include "h1pick/numerics.hpp"
#include "h1pick/param.hpp"

namespace h1pick {

/// Interpolation data: distinct disk nodes, scalar targets, optional bound.
struct ScalarProblem {
    static constexpr double kMinSeparation = 1e-10;

    std::vector<DiskPoint> nodes;
    std::vector<Complex> targets;
    std::optional<double> bound;

    ScalarProblem() = default;
    ScalarProblem(std::vector<DiskPoint> nodes, std::vector<Complex> targets,
                  std::optional<double> bound = std::nullopt);

    std::size_t size() const noexcept { return nodes.size(); }

    /// Index of the node at the origin, if any.
    std::optional<std::size_t> zero_index() const;
};

/// Throws invalid-input unless the nodes are pairwise separated by kMinSeparation.
void require_distinct(const std::vector<DiskPoint>& nodes);

/// K(z, w) = (alpha + beta z) conj(alpha + beta w) + z^2 conj(w)^2 / (1 - z conj(w))
Complex kernel_eval(const KernelParam& p, Complex z, Complex w);

/// [K(z_i, z_j)]
ComplexMatrix gram_entries(const KernelParam& p, const std::vector<DiskPoint>& nodes);
HermitianMatrix gram_matrix(const KernelParam& p, const std::vector<DiskPoint>& nodes);

/// [(A^2 - w_i conj(w_j)) K(z_i, z_j)]
HermitianMatrix family_pick_matrix(const KernelParam& p, const ScalarProblem& prob, double bound);

}  // namespace h1pick
