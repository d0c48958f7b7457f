// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "h1pick/constrained_pick.hpp"
#include "h1pick/errors.hpp"
#include "h1pick/format.hpp"
#include "h1pick/matrix_level.hpp"
#include "h1pick/metric_twopoint.hpp"
#include "support.hpp"

using namespace h1pick;
using namespace h1pick::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Grid used where a criterion pins an absolute accuracy on a scanned sup/inf.
SphereDomain precise_domain() {
    SphereDomain d;
    d.refine_rounds = 10;
    return d;
}

std::string fmt(double v) { return format_number(v, 4); }

Outcome origin_metric_law() {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double r = std::pow(10.0, -3.0 + 3.0 * i / 49.0) * 0.949;
        const Complex z = std::polar(r, 0.37 * i);
        const double d1 = constrained_metric_d1(z, 0.0).value;
        worst = std::max(worst, std::abs(d1 - r * r));
    }
    return {worst <= 1e-6, "max |d1(z,0) - |z|^2| = " + fmt(worst) + " (tol 1e-6)"};
}

Outcome golden_minimal_norm() {
    const ScalarProblem prob({0.0, 0.5}, {0.0, 1.0});
    // f = z^2 h with h(0.5) = 4 forces ||f|| >= 4, attained by f = 4 z^2.
    const double oracle = 1.0 / (0.5 * 0.5);
    const double scan = minimal_norm(prob, precise_domain()).value;
    const double exact = minimal_norm_zero(prob);
    const double d = constrained_metric_d1(0.0, 0.5, precise_domain()).value;
    const double two_point = two_point_representation(0.0, 1.0, d).norm;
    const double err = std::max({std::abs(scan - oracle), std::abs(exact - oracle), std::abs(two_point - oracle)});
    std::ostringstream os;
    os << "scan " << format_number(scan) << ", exact " << format_number(exact) << ", two-point "
       << format_number(two_point) << " vs 4 (max err " << fmt(err) << ", tol 1e-6)";
    return {err <= 1e-6, os.str()};
}

struct EquivalenceStats {
    int problems = 0;
    int feasible = 0;
    int disagreements = 0;
    int solve_failures = 0;
    double worst_residual = 0.0;
    double worst_derivative = 0.0;
    double worst_sup_excess = 0.0;
    std::string first_failure;
};

double sampled_sup(const std::function<Complex(Complex)>& f, int samples) {
    double m = 0.0;
    for (int s = 0; s < samples; ++s) m = std::max(m, std::abs(f(std::polar(1.0, kTwoPi * s / samples))));
    return m;
}

// Independent derivative check: eight-point trapezoid Cauchy integral at radius 1e-3.
double cauchy_derivative(const std::function<Complex(Complex)>& f) {
    const double rho = 1e-3;
    Complex acc = 0.0;
    for (int j = 0; j < 8; ++j) {
        const Complex u = std::polar(1.0, kTwoPi * j / 8);
        acc += f(rho * u) * std::conj(u);
    }
    return std::abs(acc) / (8.0 * rho);
}

EquivalenceStats criterion_equivalence() {
    EquivalenceStats st;
    Rng rng(20240601);
    const SphereDomain dom;
    while (st.problems < 200) {
        const std::size_t n = 2 + static_cast<std::size_t>(st.problems % 3);
        const auto nodes = random_nodes(rng, n, 0.05, 0.9);
        const InnerH1 f = random_inner_h1(rng, uniform(rng, 0.5, 1.5));
        std::vector<Complex> targets;
        for (const auto& z : nodes) targets.push_back(f(z));
        const ScalarProblem prob(nodes, targets);
        const FeasibilityReport fam = family_feasibility(prob, 1.0, dom);
        if (std::abs(fam.min_eig) < 1e-4) continue;
        ++st.problems;
        const FeasibilityReport moe = moebius_feasibility(prob, 1.0, dom);
        const bool fam_ok = fam.status != PsdStatus::Infeasible;
        const bool moe_ok = moe.status != PsdStatus::Infeasible;
        if (fam_ok != moe_ok) {
            ++st.disagreements;
            if (st.first_failure.empty())
                st.first_failure = "disagreement: family " + fmt(fam.min_eig) + ", lambda search " + fmt(moe.min_eig);
        }
        if (!fam_ok) continue;
        ++st.feasible;
        try {
            const Solution sol = solve(prob, 1.0, dom);
            const auto& g = sol.interpolant;
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(g(nodes[i]) - targets[i]));
            const double der = std::max(cauchy_derivative(g), sol.derivative_at_zero);
            const double sup = sampled_sup(g, 4096);
            st.worst_residual = std::max(st.worst_residual, res);
            st.worst_derivative = std::max(st.worst_derivative, der);
            st.worst_sup_excess = std::max(st.worst_sup_excess, sup - 1.0);
            if (res > 1e-7 || der > 1e-7 || sup > 1.0 + 1e-7) ++st.solve_failures;
        } catch (const Error& e) {
            ++st.solve_failures;
            if (st.first_failure.empty()) st.first_failure = std::string("solve: ") + e.what();
        }
    }
    return st;
}

Outcome zero_node_reconciliation() {
    Rng rng(777);
    const SphereDomain dom = precise_domain();
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
        auto nodes = random_nodes(rng, n - 1, 0.1, 0.9);
        nodes.insert(nodes.begin() + static_cast<std::ptrdiff_t>(t % n), DiskPoint(0.0));
        std::vector<Complex> targets;
        for (std::size_t i = 0; i < n; ++i) targets.push_back(random_disk(rng, 0.0, 1.0));
        const ScalarProblem prob(nodes, targets);
        const double exact = minimal_norm_zero(prob);
        const double scan = minimal_norm(prob, dom).value;
        worst = std::max(worst, std::abs(scan - exact) / exact);
    }
    return {worst <= 1e-5, "max relative |scan - exact| = " + fmt(worst) + " over 100 problems (tol 1e-5)"};
}

Outcome scalar_no_gap() {
    const ScanReport rep = counterexample_scan({0.0, 0.5, -0.5}, 1, 200, 11, precise_domain());
    double worst = -1.0;
    for (const auto& r : rep.rows) worst = std::max(worst, r.gap);
    return {worst <= 1e-6, "max gap " + fmt(worst) + " over 200 trials (tol 1e-6)"};
}

Outcome matrix_gap_evidence() {
    const std::vector<DiskPoint> nodes = {0.0, Complex(0.5, 0.0), Complex(-0.3, 0.45)};
    const std::uint64_t seed = 5;
    const ScanReport rep = counterexample_scan(nodes, 2, 1000, seed);
    const ScanRow& top = rep.rows[rep.max_gap_row];

    // Rerun the maximal-gap trial from its seed alone, single-threaded.
    SphereDomain serial;
    serial.threads = 1;
    const auto targets = scan_targets(nodes.size(), 2, seed, top.trial);
    const MatrixProblem prob(nodes, targets);
    ScanReport again;
    again.seed = seed;
    again.rows.push_back({top.trial, 0.0, minimal_matrix_norm_zero(prob), phi_sup_norm(prob, serial).value});
    again.rows.back().gap = again.rows.back().a_true - again.rows.back().a_family;
    ScanReport first = rep;
    first.rows = {top};
    std::ostringstream a, b;
    write_scan_csv(a, first);
    write_scan_csv(b, again);
    bool same_targets = targets.size() == rep.max_gap_targets.size();
    for (std::size_t i = 0; same_targets && i < targets.size(); ++i)
        same_targets = targets[i] == rep.max_gap_targets[i];

    const bool pass = rep.min_gap >= -1e-7 && a.str() == b.str() && same_targets;
    std::ostringstream os;
    os << "min gap " << fmt(rep.min_gap) << " (tol -1e-7), max gap " << format_number(top.gap) << " at trial "
       << top.trial << (top.gap > 1e-6 ? " (positive gap observed)" : " (no positive gap: non-refutation)")
       << ", rerun " << (a.str() == b.str() && same_targets ? "byte-identical" : "DIFFERS");
    return {pass, os.str()};
}

Outcome subalgebra_distance_sanity() {
    Rng rng(99);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        FourierFunction f;
        f.coefficients[0] = random_disk(rng, 0.0, 1.0);
        for (int m = 2; m <= 8; ++m)
            if (uniform(rng, 0.0, 1.0) < 0.6) f.coefficients[m] = random_disk(rng, 0.0, 1.0);
        worst = std::max(worst, dist_to_subalgebra(f, 20).value);
    }
    FourierFunction conj_z;
    conj_z.coefficients[-1] = 1.0;
    const DistanceEstimate d = dist_to_subalgebra(conj_z, 64);
    const bool pass = worst <= 1e-10 && std::abs(d.value - 1.0) <= d.error_estimate + 1e-12;
    std::ostringstream os;
    os << "max over 20 subalgebra polynomials " << fmt(worst) << " (tol 1e-10); e^{-it}: " << format_number(d.value)
       << " +/- " << fmt(d.error_estimate);
    return {pass, os.str()};
}

Outcome metric_inequalities() {
    Rng rng(4242);
    const SphereDomain dom = precise_domain();
    double upper = -1.0, asym = 0.0, comp = -1.0;
    for (int t = 0; t < 500; ++t) {
        const Complex x = random_disk(rng, 0.0, 0.95);
        const Complex y = random_disk(rng, 0.0, 0.95);
        const double dxy = constrained_metric_d1(x, y, dom).value;
        upper = std::max(upper, dxy - pseudo_metric_dH(x, y));
        asym = std::max(asym, std::abs(dxy - constrained_metric_d1(y, x, dom).value));
        const Complex z = random_disk(rng, 0.0, 0.95);
        const double dyz = constrained_metric_d1(y, z, dom).value;
        const double dxz = constrained_metric_d1(x, z, dom).value;
        comp = std::max(comp, dxz - (dxy + dyz) / (1.0 + dxy * dyz));
    }
    const bool pass = upper <= 1e-8 && asym <= 1e-8 && comp <= 1e-8;
    std::ostringstream os;
    os << "max d1 - dH " << fmt(upper) << ", max asymmetry " << fmt(asym) << ", max composition excess "
       << fmt(comp) << " (tol 1e-8)";
    return {pass, os.str()};
}

Outcome multiplier_property() {
    Rng rng(31337);
    SphereDomain dom;
    dom.n_r = 32;
    dom.n_theta = 64;
    double worst = -1.0;
    for (int t = 0; t < 20; ++t) {
        const InnerH1 f = random_inner_h1(rng, uniform(rng, 0.3, 1.5), 3);
        const auto nodes = random_nodes(rng, 5, 0.0, 0.9);
        std::vector<Complex> w;
        for (const auto& z : nodes) w.push_back(f(z));
        const MatrixProblem prob = MatrixProblem::from_scalar(ScalarProblem(nodes, w));
        const double family = phi_sup_norm(prob, dom).value;
        const double sup = boundary_sup_norm(f, 4096).value;
        worst = std::max(worst, family / sup - 1.0);
    }
    return {worst <= 1e-6, "max (sup phi_map_norm) / ||f||_inf - 1 = " + fmt(worst) + " (tol 1e-6)"};
}

}  // namespace

int main(int argc, char** argv) {
    // Optional copy of the report; ctest hides the output of passing tests.
    std::FILE* copy = argc > 1 ? std::fopen(argv[1], "w") : nullptr;
    int failures = 0;
    auto report = [&](int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > limit_s) {
            o.pass = false;
            o.detail += "; runtime over limit";
        }
        failures += o.pass ? 0 : 1;
        for (std::FILE* f : {stdout, copy}) {
            if (!f) continue;
            std::fprintf(f, "[%s] %2d %s: %s (%.1f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", id, name,
                         o.detail.c_str(), secs, limit_s);
            std::fflush(f);
        }
    };

    report(1, "origin metric law", 30, origin_metric_law);
    report(2, "golden minimal norm", 5, golden_minimal_norm);

    EquivalenceStats eq;
    double eq_secs = 0.0;
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            eq = criterion_equivalence();
        } catch (const std::exception& e) {
            error = e.what();
        }
        eq_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!error.empty()) eq.first_failure = "exception: " + error;
        if (!error.empty()) eq.disagreements = eq.solve_failures = -1;
    }
    report(3, "criterion equivalence", 600, [&] {
        std::ostringstream os;
        os << eq.disagreements << " disagreements over " << eq.problems << " problems (" << eq.feasible
           << " feasible), run " << format_number(eq_secs, 3) << " s";
        if (!eq.first_failure.empty()) os << "; first failure: " << eq.first_failure;
        return Outcome{eq.disagreements == 0 && eq_secs <= 600, os.str()};
    });
    report(4, "constructive soundness", 600, [&] {
        std::ostringstream os;
        os << eq.solve_failures << " failures over " << eq.feasible << " feasible instances; max residual "
           << fmt(eq.worst_residual) << ", max |f'(0)| " << fmt(eq.worst_derivative) << ", max sup excess "
           << fmt(eq.worst_sup_excess) << " (tol 1e-7)";
        return Outcome{eq.solve_failures == 0 && eq.feasible > 0, os.str()};
    });
    report(5, "zero-node reconciliation", 300, zero_node_reconciliation);
    report(6, "scalar no-gap law", 300, scalar_no_gap);
    report(7, "matrix-gap evidence", 1200, matrix_gap_evidence);
    report(8, "subalgebra distance sanity", 120, subalgebra_distance_sanity);
    report(9, "metric inequalities", 120, metric_inequalities);
    report(10, "multiplier property", 300, multiplier_property);

    for (std::FILE* f : {stdout, copy})
        if (f) std::fprintf(f, "%s: %d of 10 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    if (copy) std::fclose(copy);
    return failures == 0 ? 0 : 1;
}
