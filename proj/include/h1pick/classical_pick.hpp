#pragma once

#include <functional>
#include <vector>

#include "h1pick/numerics.hpp"
#include "h1pick/param.hpp"

namespace h1pick {

/// phi_lambda(z) = (z - lambda) / (1 - conj(lambda) z); sends lambda to 0.
Complex moebius_map(Complex lambda, Complex z);

struct BlaschkeProduct {
    std::vector<DiskPoint> zeros;
    Complex unimodular_factor{1.0, 0.0};
};

Complex blaschke_eval(const BlaschkeProduct& b, Complex z);

struct ClassicalFeasibility {
    HermitianMatrix pick;
    double min_eig = 0.0;
    PsdStatus status = PsdStatus::Feasible;
};

/// Classical Pick matrix [(A^2 - w_i conj(w_j)) / (1 - z_i conj(z_j))] and its PSD status.
ClassicalFeasibility classical_feasibility(const std::vector<DiskPoint>& nodes, const std::vector<Complex>& targets,
                                           double bound);

/// Schur-algorithm interpolant. Step j stores the node z_j and the value
/// gamma_j of the j-th reduced function there; evaluation unwinds
/// g_j(z) = phi_{-gamma_j}(phi_{z_j}(z) g_{j+1}(z)) from the tail.
struct SchurInterpolant {
    struct Step {
        DiskPoint node;
        Complex gamma;
    };
    std::vector<Step> steps;
    Complex tail{0.0, 0.0};
};

/// Builds a Schur-class interpolant of (z_i, w_i) with tail 0. Pick-singular
/// data is accepted when it forces a unimodular constant consistently.
SchurInterpolant schur_solve(const std::vector<DiskPoint>& nodes, const std::vector<Complex>& targets);

Complex schur_eval(const SchurInterpolant& s, Complex z);

struct SupNormEstimate {
    /// Largest sampled |f| on the unit circle (a lower bound on the sup norm).
    double value = 0.0;
    /// Sampled max |f'| times half the sample spacing.
    double gap_estimate = 0.0;
};

SupNormEstimate boundary_sup_norm(const std::function<Complex(Complex)>& f, int samples = 4096);

}  // namespace h1pick
