#include "h1pick/classical_pick.hpp"

#include <cmath>
#include <sstream>

#include "h1pick/errors.hpp"
#include "h1pick/kernels.hpp"

namespace h1pick {

namespace {

// |gamma| above this is treated as unimodular.
constexpr double kUnimodularCut = 1.0 - 1e-9;
// Forced-constant consistency for Pick-singular data.
constexpr double kForcedTol = 1e-8;

}  // namespace

Complex moebius_map(Complex lambda, Complex z) { return (z - lambda) / (1.0 - std::conj(lambda) * z); }

Complex blaschke_eval(const BlaschkeProduct& b, Complex z) {
    Complex v = b.unimodular_factor;
    for (const auto& a : b.zeros) v *= moebius_map(a, z);
    return v;
}

ClassicalFeasibility classical_feasibility(const std::vector<DiskPoint>& nodes, const std::vector<Complex>& targets,
                                           double bound) {
    if (nodes.empty() || nodes.size() != targets.size()) throw_invalid("nodes and targets must be nonempty and match");
    if (!(bound > 0.0)) throw_invalid("bound A must be positive");
    require_distinct(nodes);
    const auto n = static_cast<Eigen::Index>(nodes.size());
    const double a2 = bound * bound;
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = (a2 - targets[i] * std::conj(targets[j])) /
                      (1.0 - nodes[i].value() * std::conj(nodes[j].value()));
    HermitianMatrix pick(m);
    const double me = min_eigenvalue(pick);
    return {pick, me, classify_psd(me, pick.scale())};
}

SchurInterpolant schur_solve(const std::vector<DiskPoint>& nodes, const std::vector<Complex>& targets) {
    for (const auto& w : targets) {
        if (std::abs(w) > 1.0 + kForcedTol) {
            std::ostringstream os;
            os << "Schur data needs |w| <= 1 (got " << std::abs(w) << ")";
            throw_invalid(os.str());
        }
    }
    const auto feas = classical_feasibility(nodes, targets, 1.0);
    if (feas.status == PsdStatus::Infeasible) {
        std::ostringstream os;
        os << "classical Pick matrix is not positive semidefinite (min eigenvalue " << feas.min_eig << ")";
        throw Error(ErrorKind::Infeasible, os.str(), feas.min_eig);
    }

    SchurInterpolant out;
    std::vector<Complex> w = targets;
    const std::size_t n = nodes.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Complex gamma = w[j];
        if (std::abs(gamma) >= kUnimodularCut) {
            // Remaining data must be the same unimodular constant.
            for (std::size_t i = j + 1; i < n; ++i) {
                if (std::abs(w[i] - gamma) > kForcedTol) {
                    std::ostringstream os;
                    os << "Pick-singular data: reduced target " << i << " differs from forced constant by "
                       << std::abs(w[i] - gamma);
                    throw Error(ErrorKind::Degenerate, os.str(), std::abs(w[i] - gamma));
                }
            }
            out.tail = gamma / std::abs(gamma);
            return out;
        }
        out.steps.push_back({nodes[j], gamma});
        for (std::size_t i = j + 1; i < n; ++i) {
            const Complex denom = moebius_map(nodes[j], nodes[i]);
            w[i] = moebius_map(gamma, w[i]) / denom;
            if (std::abs(w[i]) > 1.0 + kForcedTol) {
                std::ostringstream os;
                os << "Schur recursion left the closed disk at step " << j << " (|w| = " << std::abs(w[i]) << ")";
                throw Error(ErrorKind::Degenerate, os.str(), std::abs(w[i]));
            }
        }
    }
    out.tail = Complex(0.0, 0.0);
    return out;
}

Complex schur_eval(const SchurInterpolant& s, Complex z) {
    Complex g = s.tail;
    for (auto it = s.steps.rbegin(); it != s.steps.rend(); ++it)
        g = moebius_map(-it->gamma, moebius_map(it->node, z) * g);
    return g;
}

SupNormEstimate boundary_sup_norm(const std::function<Complex(Complex)>& f, int samples) {
    if (samples < 8) throw_invalid("boundary_sup_norm needs at least 8 samples");
    const double dt = kTwoPi / samples;
    std::vector<Complex> v(static_cast<std::size_t>(samples));
    double best = 0.0;
    for (int k = 0; k < samples; ++k) {
        v[static_cast<std::size_t>(k)] = f(std::polar(1.0, k * dt));
        best = std::max(best, std::abs(v[static_cast<std::size_t>(k)]));
    }
    double slope = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Complex d = v[static_cast<std::size_t>((k + 1) % samples)] - v[static_cast<std::size_t>(k)];
        slope = std::max(slope, std::abs(d) / dt);
    }
    return {best, slope * dt * 0.5};
}

}  // namespace h1pick
