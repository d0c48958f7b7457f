#include <doctest.h>

#include <cmath>

#include "h1pick/classical_pick.hpp"
#include "h1pick/errors.hpp"
#include "support.hpp"

using namespace h1pick;
using namespace h1pick::testing;

TEST_CASE("moebius maps fix the circle and invert each other") {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const Complex lam = random_disk(rng, 0.0, 0.95);
        const Complex z = random_disk(rng, 0.0, 0.95);
        CHECK(std::abs(moebius_map(lam, lam)) == 0.0);
        CHECK(std::abs(std::abs(moebius_map(lam, std::polar(1.0, uniform(rng, 0.0, kTwoPi)))) - 1.0) < 1e-13);
        CHECK(std::abs(moebius_map(-lam, moebius_map(lam, z)) - z) < 1e-13);
    }
}

TEST_CASE("blaschke products vanish on their zeros") {
    const BlaschkeProduct b{{DiskPoint(0.5), DiskPoint(0.0, -0.3)}, Complex(0.0, 1.0)};
    CHECK(std::abs(blaschke_eval(b, 0.5)) == 0.0);
    CHECK(std::abs(std::abs(blaschke_eval(b, std::polar(1.0, 2.0))) - 1.0) < 1e-14);
}

TEST_CASE("classical pick matrix of a contraction's values is PSD") {
    Rng rng(2);
    const InnerH1 f = random_inner_h1(rng, 0.9);
    const auto nodes = random_nodes(rng, 4, 0.0, 0.9);
    std::vector<Complex> w;
    for (const auto& z : nodes) w.push_back(f(z));
    CHECK(classical_feasibility(nodes, w, 1.0).status == PsdStatus::Feasible);
    CHECK(classical_feasibility(nodes, w, 0.5).status == PsdStatus::Infeasible);
}

TEST_CASE("schur interpolant matches the data and stays in the unit ball") {
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        const InnerH1 f = random_inner_h1(rng, uniform(rng, 0.2, 0.95));
        const auto nodes = random_nodes(rng, 1 + static_cast<std::size_t>(t % 5), 0.0, 0.9);
        std::vector<Complex> w;
        for (const auto& z : nodes) w.push_back(f(z));
        const SchurInterpolant s = schur_solve(nodes, w);
        for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(std::abs(schur_eval(s, nodes[i]) - w[i]) < 1e-10);
        CHECK(boundary_sup_norm([&](Complex z) { return schur_eval(s, z); }, 1024).value <= 1.0 + 1e-12);
    }
}

TEST_CASE("pick-singular data is solved by its unique blaschke product") {
    // Three values of a degree-one Blaschke product determine it.
    const BlaschkeProduct b{{DiskPoint(0.2, 0.1)}, Complex(0.6, 0.8)};
    const std::vector<DiskPoint> nodes = {0.0, 0.5, Complex(-0.4, 0.3)};
    std::vector<Complex> w;
    for (const auto& z : nodes) w.push_back(blaschke_eval(b, z));
    const SchurInterpolant s = schur_solve(nodes, w);
    CHECK(std::abs(schur_eval(s, 0.7) - blaschke_eval(b, 0.7)) < 1e-8);
}

TEST_CASE("infeasible data and out-of-ball targets are rejected") {
    try {
        schur_solve({0.0, 0.5}, {0.0, 0.9});
        FAIL("infeasible data accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Infeasible);
        CHECK(e.value().has_value());
    }
    CHECK_THROWS_AS(schur_solve({0.0}, {1.5}), Error);
}

TEST_CASE("boundary sup norm of simple functions") {
    CHECK(boundary_sup_norm([](Complex z) { return z * z * z; }).value == doctest::Approx(1.0));
    CHECK(boundary_sup_norm([](Complex) { return Complex(0.5, 0.0); }).value == doctest::Approx(0.5));
    const SupNormEstimate e = boundary_sup_norm([](Complex z) { return 1.0 + z; }, 64);
    // The true sup 2 lies within the reported gap.
    CHECK(e.value <= 2.0);
    CHECK(e.value + e.gap_estimate >= 2.0 - 1e-12);
}
