#include "h1pick/param.hpp"

#include <cmath>
#include <sstream>

#include "h1pick/errors.hpp"

namespace h1pick {

DiskPoint::DiskPoint(Complex value) : value_(value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
        std::abs(value) > 1.0 - kBoundaryMargin) {
        std::ostringstream os;
        os << "point (" << value.real() << ", " << value.imag() << ") is not in the open unit disk";
        throw_invalid(os.str());
    }
}

double KernelParam::beta() const noexcept { return std::sqrt(std::max(0.0, 1.0 - r * r)); }

KernelParam make_param(double r, double theta) {
    if (!(r >= 0.0 && r <= 1.0)) {
        std::ostringstream os;
        os << "kernel parameter r = " << r << " is outside [0, 1]";
        throw_invalid(os.str());
    }
    if (!std::isfinite(theta)) throw_invalid("kernel parameter theta is not finite");
    if (r == 1.0) return {1.0, 0.0};
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return {r, t};
}

KernelParam param_from_pair(Complex alpha, Complex beta) {
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(norm > 0.0) || !std::isfinite(norm)) throw_invalid("kernel pair (alpha, beta) must be nonzero");
    alpha /= norm;
    beta /= norm;
    const double b = std::abs(beta);
    if (b > 0.0) alpha *= std::conj(beta) / b;
    const double r = std::min(1.0, std::abs(alpha));
    return make_param(r, r > 0.0 ? std::arg(alpha) : 0.0);
}

}  // namespace h1pick
