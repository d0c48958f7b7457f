#pragma once

#include <string_view>

#include "h1pick/kernels.hpp"
#include "h1pick/numerics.hpp"

namespace h1pick {

/// |(z - w) / (1 - conj(w) z)|
double pseudo_metric_dH(DiskPoint z, DiskPoint w);

/// 1 - |K(w,z)|^2 / (K(w,w) K(z,z)); parameters with a vanishing diagonal
/// impose no constraint and return 1.
double d1_objective(const KernelParam& p, Complex z, Complex w);

struct MetricResult {
    double value = 0.0;
    KernelParam param;
};

/// Metric induced by the functions with f'(0) = 0: sqrt of the minimum of d1_objective.
MetricResult constrained_metric_d1(DiskPoint z, DiskPoint w, const SphereDomain& dom = {});

/// Closed-form minimizer of d1_objective(., z, 0), canonicalized (beta >= 0).
KernelParam argmin_param_origin(DiskPoint z, double phase = 0.0);

enum class Envelope { M2, CplusC };

std::string_view to_string(Envelope e);

/// b = sqrt(d^-2 - 1) for d in (0, 1].
double two_point_b(double d);

struct TwoPointRep {
    double b = 0.0;
    /// [[W1, b (W1 - W2)], [0, W2]]
    ComplexMatrix matrix;
    double norm = 0.0;
    Envelope envelope = Envelope::M2;
};

TwoPointRep two_point_representation(Complex w1, Complex w2, double d);
TwoPointRep two_point_representation(const ComplexMatrix& w1, const ComplexMatrix& w2, double d);

/// || [[W1, (W1 - W2) b], [0, W2]] ||
double two_point_matrix_norm(const ComplexMatrix& w1, const ComplexMatrix& w2, double b);

}  // namespace h1pick
