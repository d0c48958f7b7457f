#include <doctest.h>

#include <cmath>

#include "h1pick/errors.hpp"
#include "h1pick/matrix_level.hpp"
#include "h1pick/metric_twopoint.hpp"
#include "support.hpp"

using namespace h1pick;
using namespace h1pick::testing;

namespace {

SphereDomain fine() {
    SphereDomain d;
    d.refine_rounds = 8;
    return d;
}

}  // namespace

TEST_CASE("pseudo-hyperbolic metric values") {
    CHECK(pseudo_metric_dH(0.3, 0.3) == 0.0);
    CHECK(pseudo_metric_dH(Complex(0.3, 0.4), 0.0) == doctest::Approx(0.5));
    CHECK(pseudo_metric_dH(0.5, -0.5) == doctest::Approx(0.8));
}

TEST_CASE("constrained metric at the origin is |z|^2") {
    for (double r : {0.1, 0.5, 0.9}) {
        const Complex z = std::polar(r, 1.0);
        CHECK(constrained_metric_d1(z, 0.0, fine()).value == doctest::Approx(r * r).epsilon(1e-8));
        CHECK(constrained_metric_d1(0.0, z, fine()).value == doctest::Approx(r * r).epsilon(1e-8));
    }
    CHECK(constrained_metric_d1(0.4, 0.4).value == 0.0);
}

TEST_CASE("closed-form minimizer at the origin") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const Complex z = random_disk(rng, 0.05, 0.95);
        const KernelParam p = argmin_param_origin(z, uniform(rng, 0.0, kTwoPi));
        CHECK(p.beta() >= 0.0);
        CHECK(p.r >= 1.0 / std::sqrt(2.0) - 1e-15);
        CHECK(d1_objective(p, z, 0.0) == doctest::Approx(std::pow(std::abs(z), 4)).epsilon(1e-10));
    }
    const KernelParam p = argmin_param_origin(0.5);
    CHECK(p.r == doctest::Approx(1.0 / std::sqrt(1.25)));
    CHECK(p.theta == doctest::Approx(0.0));
    CHECK_THROWS_AS(argmin_param_origin(0.0), Error);
}

TEST_CASE("degenerate parameters impose no constraint") {
    CHECK(d1_objective(make_param(0.0, 0.0), 0.0, 0.5) == 1.0);
}

TEST_CASE("dense-grid oracle for d1(0.5, -0.5)") {
    // Brute force over a 400 x 400 grid of the chart, uniform in r.
    double best = 1.0;
    for (int i = 0; i <= 400; ++i)
        for (int j = 0; j < 400; ++j)
            best = std::min(best, d1_objective(make_param(i / 400.0, j * kTwoPi / 400.0), 0.5, -0.5));
    const double d1 = constrained_metric_d1(0.5, -0.5, fine()).value;
    CHECK(d1 * d1 <= best + 1e-12);
    CHECK(d1 == doctest::Approx(std::sqrt(best)).epsilon(1e-3));
    CHECK(d1 <= 0.8 + 1e-12);
}

TEST_CASE("two-point representation") {
    CHECK(two_point_b(1.0) == 0.0);
    CHECK(two_point_b(0.25) == doctest::Approx(std::sqrt(15.0)));
    CHECK_THROWS_AS(two_point_b(0.0), Error);
    CHECK_THROWS_AS(two_point_b(1.5), Error);

    const TwoPointRep same = two_point_representation(Complex(0.3, 0.4), Complex(0.3, 0.4), 0.2);
    CHECK(same.norm == doctest::Approx(0.5));
    CHECK(same.envelope == Envelope::M2);
    const TwoPointRep diag = two_point_representation(1.0, 0.0, 1.0);
    CHECK(diag.norm == doctest::Approx(1.0));
    CHECK(diag.envelope == Envelope::CplusC);
    CHECK(two_point_representation(0.0, 1.0, 0.25).norm == doctest::Approx(4.0));
}

TEST_CASE("matrix two-point norm matches the family bound") {
    const double d = constrained_metric_d1(0.0, 0.5, fine()).value;
    for (int t = 0; t < 5; ++t) {
        const auto w = scan_targets(2, 2, 12, t);
        const MatrixProblem prob({0.0, 0.5}, w);
        const double b = two_point_b(d);
        CHECK(two_point_matrix_norm(w[0], w[1], b) == doctest::Approx(phi_sup_norm(prob, fine()).value).epsilon(1e-6));
        CHECK(two_point_matrix_norm(w[0], w[1], b) == doctest::Approx(minimal_matrix_norm_zero(prob)).epsilon(1e-6));
    }
    const ComplexMatrix w1 = ComplexMatrix::Identity(2, 2) * 0.5;
    CHECK(two_point_matrix_norm(w1, w1, 3.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(two_point_matrix_norm(w1, ComplexMatrix::Identity(3, 3), 1.0), Error);
}
