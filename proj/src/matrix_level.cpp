#include "h1pick/matrix_level.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "h1pick/errors.hpp"
#include "h1pick/format.hpp"

namespace h1pick {

MatrixProblem::MatrixProblem(std::vector<DiskPoint> n, std::vector<ComplexMatrix> t, std::optional<double> b)
    : nodes(std::move(n)), targets(std::move(t)), bound(b) {
    if (nodes.empty()) throw_invalid("problem needs at least one node");
    if (nodes.size() != targets.size()) {
        std::ostringstream os;
        os << "problem has " << nodes.size() << " nodes but " << targets.size() << " targets";
        throw_invalid(os.str());
    }
    k = static_cast<int>(targets[0].rows());
    if (k < 1) throw_invalid("targets must be at least 1x1");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i].rows() != k || targets[i].cols() != k) {
            std::ostringstream os;
            os << "target " << i << " is " << targets[i].rows() << "x" << targets[i].cols() << ", expected " << k
               << "x" << k;
            throw_invalid(os.str());
        }
        if (!targets[i].allFinite()) throw_invalid("target is not finite");
    }
    if (bound && !(*bound > 0.0)) throw_invalid("bound must be positive");
    require_distinct(nodes);
}

std::optional<std::size_t> MatrixProblem::zero_index() const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].value() == Complex(0.0, 0.0)) return i;
    return std::nullopt;
}

MatrixProblem MatrixProblem::from_scalar(const ScalarProblem& prob) {
    std::vector<ComplexMatrix> t;
    t.reserve(prob.size());
    for (const auto& w : prob.targets) t.push_back(ComplexMatrix::Constant(1, 1, w));
    return MatrixProblem(prob.nodes, std::move(t), prob.bound);
}

namespace {

// Block matrix [(A^2 I - X_a X_b^*) G_ab] for a scalar Gram G and blocks X.
ComplexMatrix weighted_blocks(const ComplexMatrix& g, const std::vector<ComplexMatrix>& x, int k, double a2) {
    const auto n = g.rows();
    ComplexMatrix out(n * k, n * k);
    const ComplexMatrix id = ComplexMatrix::Identity(k, k);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            out.block(a * k, b * k, k, k) = (a2 * id - x[a] * x[b].adjoint()) * g(a, b);
    return out;
}

ComplexMatrix kron_identity(const ComplexMatrix& m, int k) {
    ComplexMatrix out = ComplexMatrix::Zero(m.rows() * k, m.cols() * k);
    for (Eigen::Index a = 0; a < m.rows(); ++a)
        for (Eigen::Index b = 0; b < m.cols(); ++b)
            for (int i = 0; i < k; ++i) out(a * k + i, b * k + i) = m(a, b);
    return out;
}

ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& x, int k) {
    const auto n = static_cast<Eigen::Index>(x.size());
    ComplexMatrix out = ComplexMatrix::Zero(n * k, n * k);
    for (Eigen::Index a = 0; a < n; ++a) out.block(a * k, a * k, k, k) = x[static_cast<std::size_t>(a)];
    return out;
}

MatrixProblem origin_first(const MatrixProblem& prob) {
    const auto z0 = prob.zero_index();
    if (!z0) throw_invalid("no node at the origin; the exact block test needs 0 among the nodes");
    MatrixProblem out = prob;
    const auto pos = static_cast<std::ptrdiff_t>(*z0);
    std::rotate(out.nodes.begin(), out.nodes.begin() + pos, out.nodes.begin() + pos + 1);
    std::rotate(out.targets.begin(), out.targets.begin() + pos, out.targets.begin() + pos + 1);
    return out;
}

std::vector<ComplexMatrix> doubled(const MatrixProblem& p) {
    std::vector<ComplexMatrix> u;
    u.push_back(p.targets[0]);
    u.insert(u.end(), p.targets.begin(), p.targets.end());
    return u;
}

}  // namespace

HermitianMatrix block_family_matrix(const KernelParam& p, const MatrixProblem& prob, double bound) {
    if (!(bound > 0.0)) throw_invalid("bound A must be positive");
    return HermitianMatrix(weighted_blocks(gram_entries(p, prob.nodes), prob.targets, prob.k, bound * bound));
}

HermitianMatrix zero_block_matrix(const MatrixProblem& prob, double bound) {
    if (!(bound > 0.0)) throw_invalid("bound A must be positive");
    const MatrixProblem p = origin_first(prob);
    return HermitianMatrix(weighted_blocks(zero_node_gram(p.nodes), doubled(p), p.k, bound * bound));
}

MatrixZeroCheck matrix_feasible_zero(const MatrixProblem& prob, double bound) {
    const HermitianMatrix m = zero_block_matrix(prob, bound);
    const double me = min_eigenvalue(m);
    return {classify_psd(me, m.scale()), me, m.scale()};
}

double minimal_matrix_norm_zero(const MatrixProblem& prob) {
    const MatrixProblem p = origin_first(prob);
    const ComplexMatrix g = kron_identity(zero_node_gram(p.nodes), p.k);
    const ComplexMatrix d = block_diagonal(doubled(p), p.k);
    const ComplexMatrix w = d * g * d.adjoint();
    return std::sqrt(std::max(0.0, generalized_max_eigenvalue(HermitianMatrix(w), HermitianMatrix(g))));
}

HermitianMatrix q_matrix_zero(const std::vector<DiskPoint>& nodes) {
    return HermitianMatrix(zero_node_gram(nodes).transpose());
}

double phi_map_norm(const MatrixProblem& prob, const KernelParam& p) {
    const ComplexMatrix q = gram_entries(p, prob.nodes);
    const double scale = matrix_scale(q);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q);
    const auto& ev = es.eigenvalues();
    const ComplexMatrix d = block_diagonal(prob.targets, prob.k);
    if (ev(0) > kPsdFloor * scale) {
        const ComplexMatrix& u = es.eigenvectors();
        const ComplexMatrix s = u * ev.cwiseSqrt().asDiagonal() * u.adjoint();
        const ComplexMatrix s_inv = u * ev.cwiseSqrt().cwiseInverse().asDiagonal() * u.adjoint();
        return operator_norm(kron_identity(s_inv, prob.k) * d * kron_identity(s, prob.k));
    }
    // A kernel vector vanishes (alpha = 0 with a node at the origin): work on the span of the others.
    const ComplexMatrix g = kron_identity(q, prob.k);
    const ComplexMatrix w = d * g * d.adjoint();
    return std::sqrt(std::max(0.0, deflated_max_eigenvalue(HermitianMatrix(w), HermitianMatrix(g))));
}

NormResult phi_sup_norm(const MatrixProblem& prob, const SphereDomain& dom) {
    const SphereMax best = maximize_over_sphere([&](const KernelParam& p) { return phi_map_norm(prob, p); }, dom);
    return {best.value, best.param};
}

std::vector<ComplexMatrix> scan_targets(std::size_t n, int k, std::uint64_t seed, int trial, ScanTargets kind) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<ComplexMatrix> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int dim = kind == ScanTargets::Gaussian ? k : 1;
        ComplexMatrix w(dim, dim);
        for (Eigen::Index c = 0; c < dim; ++c)
            for (Eigen::Index r = 0; r < dim; ++r) w(r, c) = Complex(normal(rng), normal(rng));
        const double norm = operator_norm(w);
        const double target = 0.9 * (1.0 - unit(rng));  // in (0, 0.9]
        if (norm > 0.0) w *= target / norm;
        if (kind == ScanTargets::ScalarIdentity) w = w(0, 0) * ComplexMatrix::Identity(k, k);
        out.push_back(std::move(w));
    }
    return out;
}

ScanReport counterexample_scan(const std::vector<DiskPoint>& nodes, int k, int trials, std::uint64_t seed,
                               const SphereDomain& dom, ScanTargets kind) {
    if (nodes.size() < 3) throw_invalid("counterexample scan needs at least 3 nodes (two-point data never gaps)");
    if (k < 1) throw_invalid("k must be >= 1");
    if (trials < 1) throw_invalid("trials must be >= 1");
    require_distinct(nodes);
    bool has_zero = false;
    for (const auto& z : nodes) has_zero = has_zero || z.value() == Complex(0.0, 0.0);
    if (!has_zero) throw_invalid("counterexample scan needs the origin among the nodes");

    ScanReport rep;
    rep.nodes = nodes;
    rep.k = k;
    rep.seed = seed;
    rep.grid = dom;
    rep.rows.reserve(static_cast<std::size_t>(trials));
    double best = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const MatrixProblem prob(nodes, scan_targets(nodes.size(), k, seed, t, kind));
        ScanRow row;
        row.trial = t;
        row.a_true = minimal_matrix_norm_zero(prob);
        row.a_family = phi_sup_norm(prob, dom).value;
        row.gap = row.a_true - row.a_family;
        if (row.gap > best) {
            best = row.gap;
            rep.max_gap_row = rep.rows.size();
            rep.max_gap_targets = prob.targets;
        }
        rep.min_gap = t == 0 ? row.gap : std::min(rep.min_gap, row.gap);
        rep.rows.push_back(row);
    }
    return rep;
}

void write_scan_csv(std::ostream& os, const ScanReport& report) {
    os << "trial,gap,A_true,A_family,seed\n";
    for (const auto& r : report.rows)
        os << r.trial << ',' << format_number(r.gap) << ',' << format_number(r.a_true) << ','
           << format_number(r.a_family) << ',' << report.seed << '\n';
}

}  // namespace h1pick
