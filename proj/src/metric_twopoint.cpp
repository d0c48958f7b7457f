#include "h1pick/metric_twopoint.hpp"

#include <cmath>
#include <sstream>

#include "h1pick/errors.hpp"

namespace h1pick {

double pseudo_metric_dH(DiskPoint z, DiskPoint w) {
    const Complex a = z;
    const Complex b = w;
    return std::abs((a - b) / (1.0 - std::conj(b) * a));
}

double d1_objective(const KernelParam& p, Complex z, Complex w) {
    const double kww = kernel_eval(p, w, w).real();
    const double kzz = kernel_eval(p, z, z).real();
    if (kww <= 0.0 || kzz <= 0.0) return 1.0;
    return 1.0 - std::norm(kernel_eval(p, w, z)) / (kww * kzz);
}

MetricResult constrained_metric_d1(DiskPoint z, DiskPoint w, const SphereDomain& dom) {
    if (z == w) return {0.0, make_param(1.0, 0.0)};
    const SphereMax best =
        maximize_over_sphere([&](const KernelParam& p) { return -d1_objective(p, z, w); }, dom);
    return {std::sqrt(std::max(0.0, -best.value)), best.param};
}

KernelParam argmin_param_origin(DiskPoint z, double phase) {
    const Complex zv = z;
    const double r = std::abs(zv);
    if (r == 0.0) throw_invalid("argmin at the origin is undefined: every kernel attains the minimum");
    const double theta = std::arg(zv);
    const double norm = std::sqrt(1.0 + r * r);
    return param_from_pair(std::polar(1.0 / norm, phase + theta), std::polar(r / norm, phase));
}

std::string_view to_string(Envelope e) { return e == Envelope::M2 ? "M2" : "C+C"; }

double two_point_b(double d) {
    if (!(d > 0.0 && d <= 1.0)) {
        std::ostringstream os;
        os << "two-point metric value " << d << " is outside (0, 1]";
        throw_invalid(os.str());
    }
    return std::sqrt(std::max(0.0, 1.0 / (d * d) - 1.0));
}

double two_point_matrix_norm(const ComplexMatrix& w1, const ComplexMatrix& w2, double b) {
    if (!(b >= 0.0)) throw_invalid("b must be nonnegative");
    if (w1.rows() != w1.cols() || w2.rows() != w2.cols() || w1.rows() != w2.rows())
        throw_invalid("two-point targets must be square matrices of equal size");
    const auto k = w1.rows();
    ComplexMatrix m = ComplexMatrix::Zero(2 * k, 2 * k);
    m.topLeftCorner(k, k) = w1;
    m.topRightCorner(k, k) = (w1 - w2) * b;
    m.bottomRightCorner(k, k) = w2;
    return operator_norm(m);
}

TwoPointRep two_point_representation(const ComplexMatrix& w1, const ComplexMatrix& w2, double d) {
    TwoPointRep rep;
    rep.b = two_point_b(d);
    rep.norm = two_point_matrix_norm(w1, w2, rep.b);
    const auto k = w1.rows();
    rep.matrix = ComplexMatrix::Zero(2 * k, 2 * k);
    rep.matrix.topLeftCorner(k, k) = w1;
    rep.matrix.topRightCorner(k, k) = (w1 - w2) * rep.b;
    rep.matrix.bottomRightCorner(k, k) = w2;
    rep.envelope = d < 1.0 ? Envelope::M2 : Envelope::CplusC;
    return rep;
}

TwoPointRep two_point_representation(Complex w1, Complex w2, double d) {
    return two_point_representation(ComplexMatrix::Constant(1, 1, w1), ComplexMatrix::Constant(1, 1, w2), d);
}

}  // namespace h1pick
