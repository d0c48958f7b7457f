#include "h1pick/kernels.hpp"

#include <sstream>

#include "h1pick/errors.hpp"

namespace h1pick {

void require_distinct(const std::vector<DiskPoint>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (std::abs(nodes[i].value() - nodes[j].value()) < ScalarProblem::kMinSeparation) {
                std::ostringstream os;
                os << "nodes " << i << " and " << j << " coincide";
                throw_invalid(os.str());
            }
        }
    }
}

ScalarProblem::ScalarProblem(std::vector<DiskPoint> n, std::vector<Complex> t, std::optional<double> b)
    : nodes(std::move(n)), targets(std::move(t)), bound(b) {
    if (nodes.empty()) throw_invalid("problem needs at least one node");
    if (nodes.size() != targets.size()) {
        std::ostringstream os;
        os << "problem has " << nodes.size() << " nodes but " << targets.size() << " targets";
        throw_invalid(os.str());
    }
    for (const auto& w : targets)
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw_invalid("target is not finite");
    if (bound && !(*bound > 0.0)) throw_invalid("bound must be positive");
    require_distinct(nodes);
}

std::optional<std::size_t> ScalarProblem::zero_index() const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].value() == Complex(0.0, 0.0)) return i;
    return std::nullopt;
}

Complex kernel_eval(const KernelParam& p, Complex z, Complex w) {
    const Complex a = p.alpha();
    const double b = p.beta();
    const Complex zw = z * std::conj(w);
    return (a + b * z) * std::conj(a + b * w) + zw * zw / (1.0 - zw);
}

ComplexMatrix gram_entries(const KernelParam& p, const std::vector<DiskPoint>& nodes) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = kernel_eval(p, nodes[i], nodes[i]);
        for (Eigen::Index j = 0; j < i; ++j) {
            g(i, j) = kernel_eval(p, nodes[i], nodes[j]);
            g(j, i) = std::conj(g(i, j));
        }
    }
    return g;
}

HermitianMatrix gram_matrix(const KernelParam& p, const std::vector<DiskPoint>& nodes) {
    return HermitianMatrix(gram_entries(p, nodes));
}

HermitianMatrix family_pick_matrix(const KernelParam& p, const ScalarProblem& prob, double bound) {
    if (!(bound > 0.0)) throw_invalid("bound A must be positive");
    ComplexMatrix g = gram_entries(p, prob.nodes);
    const double a2 = bound * bound;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            g(i, j) *= a2 - prob.targets[i] * std::conj(prob.targets[j]);
    return HermitianMatrix(g);
}

}  // namespace h1pick
