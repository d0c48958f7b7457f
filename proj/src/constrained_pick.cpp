#include "h1pick/constrained_pick.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "h1pick/errors.hpp"

namespace h1pick {

std::string_view to_string(Criterion c) {
    switch (c) {
        case Criterion::Family: return "family";
        case Criterion::Moebius: return "moebius";
    }
    return "unknown";
}

double family_min_eig(const ScalarProblem& prob, double bound, const KernelParam& p) {
    return min_eigenvalue(family_pick_matrix(p, prob, bound));
}

FeasibilityReport family_feasibility(const ScalarProblem& prob, double bound, const SphereDomain& dom) {
    if (!(bound > 0.0)) throw_invalid("bound A must be positive");
    const SphereMax worst =
        maximize_over_sphere([&](const KernelParam& p) { return -family_min_eig(prob, bound, p); }, dom);
    FeasibilityReport rep;
    rep.via = Criterion::Family;
    rep.grid = dom;
    rep.worst_param = worst.param;
    rep.min_eig = -worst.value;
    rep.scale = family_pick_matrix(worst.param, prob, bound).scale();
    rep.status = classify_psd(rep.min_eig, rep.scale);
    rep.certified = rep.status == PsdStatus::Infeasible;
    return rep;
}

double compressed_norm_squared(const ScalarProblem& prob, const KernelParam& p) {
    const ComplexMatrix g = gram_entries(p, prob.nodes);
    ComplexMatrix w = g;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) w(i, j) *= prob.targets[i] * std::conj(prob.targets[j]);
    return deflated_max_eigenvalue(HermitianMatrix(w), HermitianMatrix(g));
}

NormResult minimal_norm(const ScalarProblem& prob, const SphereDomain& dom) {
    const SphereMax best =
        maximize_over_sphere([&](const KernelParam& p) { return compressed_norm_squared(prob, p); }, dom);
    return {std::sqrt(std::max(0.0, best.value)), best.param};
}

HermitianMatrix moebius_criterion_matrix(const ScalarProblem& prob, Complex lambda) {
    const auto n = static_cast<Eigen::Index>(prob.size());
    std::vector<Complex> g(prob.size());
    for (std::size_t i = 0; i < prob.size(); ++i) g[i] = moebius_map(lambda, prob.targets[i]);
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex zi = prob.nodes[i];
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex zj = prob.nodes[j];
            const Complex zz = zi * std::conj(zj);
            m(i, j) = (zz * zz - g[i] * std::conj(g[j])) / (1.0 - zz);
        }
    }
    return HermitianMatrix(m);
}

namespace {

constexpr int kExtraLambdaRounds = 8;

void require_schur_targets(const ScalarProblem& prob) {
    for (std::size_t i = 0; i < prob.size(); ++i) {
        if (std::abs(prob.targets[i]) > 1.0 + 1e-12) {
            std::ostringstream os;
            os << "target " << i << " has modulus " << std::abs(prob.targets[i])
               << " > 1; normalize by the minimal norm first";
            throw_invalid(os.str());
        }
    }
}

ScalarProblem scaled_targets(const ScalarProblem& prob, double factor) {
    ScalarProblem out = prob;
    for (auto& w : out.targets) w *= factor;
    out.bound = 1.0;
    return out;
}

}  // namespace

MoebiusSearch moebius_search_detail(const ScalarProblem& prob, const SphereDomain& dom) {
    require_schur_targets(prob);
    MoebiusSearch out;
    if (const auto z0 = prob.zero_index()) {
        const Complex forced = prob.targets[*z0];
        if (std::abs(forced) > 1.0 - DiskPoint::kBoundaryMargin) {
            // lambda would have to be unimodular; no admissible point in the disk.
            out.best_min_eig = -1.0;
            return out;
        }
        out.best_lambda = DiskPoint(forced);
        const HermitianMatrix m = moebius_criterion_matrix(prob, forced);
        out.best_min_eig = min_eigenvalue(m);
        out.scale = m.scale();
    } else {
        // Near-extremal data admits only a thin set of lambdas, so deepen
        // the refinement until one is found or the depth cap is reached.
        ChartGrid chart{0.0, 1.0 - 1e-9, kTwoPi, dom};
        const int cap = dom.refine_rounds + kExtraLambdaRounds;
        for (;;) {
            const ChartMax best = maximize_on_chart(
                [&](double rho, double phi) {
                    return min_eigenvalue(moebius_criterion_matrix(prob, std::polar(rho, phi)));
                },
                chart);
            out.best_lambda = DiskPoint(std::polar(best.x, best.y));
            out.best_min_eig = best.value;
            out.scale = moebius_criterion_matrix(prob, out.best_lambda).scale();
            if (classify_psd(out.best_min_eig, out.scale) != PsdStatus::Infeasible) break;
            if (chart.grid.refine_rounds >= cap) break;
            chart.grid.refine_rounds = std::min(cap, chart.grid.refine_rounds + 4);
        }
    }
    if (classify_psd(out.best_min_eig, out.scale) != PsdStatus::Infeasible) out.lambda = out.best_lambda;
    return out;
}

std::optional<DiskPoint> moebius_search(const ScalarProblem& prob, const SphereDomain& dom) {
    return moebius_search_detail(prob, dom).lambda;
}

FeasibilityReport moebius_feasibility(const ScalarProblem& prob, double bound, const SphereDomain& dom) {
    if (!(bound > 0.0)) throw_invalid("bound A must be positive");
    FeasibilityReport rep;
    rep.via = Criterion::Moebius;
    rep.grid = dom;
    const ScalarProblem unit = scaled_targets(prob, 1.0 / bound);
    double top = 0.0;
    for (const auto& w : unit.targets) top = std::max(top, std::abs(w));
    if (top > 1.0) {
        // |f(z_i)| <= ||f|| already fails.
        rep.status = PsdStatus::Infeasible;
        rep.min_eig = 1.0 - top * top;
        rep.certified = true;
        return rep;
    }
    const MoebiusSearch s = moebius_search_detail(unit, dom);
    rep.min_eig = s.best_min_eig;
    rep.scale = s.scale;
    rep.status = classify_psd(s.best_min_eig, s.scale);
    rep.witness_lambda = s.lambda;
    rep.certified = s.lambda.has_value();
    return rep;
}

Complex ConstrainedInterpolant::operator()(Complex z) const {
    return scale * moebius_map(-lambda.value(), z * z * schur_eval(inner, z));
}

double derivative_at_origin(const std::function<Complex(Complex)>& f, double radius) {
    const Complex i(0.0, 1.0);
    const Complex d = (f(radius) - f(-radius)) - i * (f(i * radius) - f(-i * radius));
    return std::abs(d) / (4.0 * radius);
}

Solution solve(const ScalarProblem& prob, double bound, const SphereDomain& dom) {
    if (!(bound > 0.0)) throw_invalid("bound A must be positive");
    const FeasibilityReport fam = family_feasibility(prob, bound, dom);
    if (fam.status == PsdStatus::Infeasible) {
        std::ostringstream os;
        os << "no interpolant with norm <= " << bound << ": family matrix has min eigenvalue " << fam.min_eig;
        throw Error(ErrorKind::Infeasible, os.str(), fam.min_eig);
    }
    const double retry = bound * (1.0 + 1e-6);
    auto marginal = [&](const std::string& why) -> Error {
        std::ostringstream os;
        os << why << "; the data is marginal at A = " << bound << ", retry with A = " << retry;
        return Error(ErrorKind::MarginalData, os.str(), fam.min_eig);
    };

    const ScalarProblem unit = scaled_targets(prob, 1.0 / bound);
    for (const auto& w : unit.targets)
        if (std::abs(w) > 1.0) throw marginal("a target sits on the bound");
    const MoebiusSearch search = moebius_search_detail(unit, dom);
    if (!search.lambda) throw marginal("the lambda search found no admissible point");
    const Complex lambda = *search.lambda;

    std::vector<DiskPoint> hn;
    std::vector<Complex> hw;
    for (std::size_t i = 0; i < unit.size(); ++i) {
        const Complex z = unit.nodes[i];
        if (z == Complex(0.0, 0.0)) continue;
        hn.push_back(unit.nodes[i]);
        Complex v = moebius_map(lambda, unit.targets[i]) / (z * z);
        if (std::abs(v) > 1.0 && std::abs(v) <= 1.0 + 1e-9) v /= std::abs(v);
        hw.push_back(v);
    }
    SchurInterpolant inner;
    if (!hn.empty()) {
        try {
            inner = schur_solve(hn, hw);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::Infeasible ||
                e.kind() == ErrorKind::Degenerate)
                throw marginal(std::string("reduced problem failed: ") + e.what());
            throw;
        }
    }

    Solution sol;
    sol.interpolant = {bound, DiskPoint(lambda), std::move(inner)};
    sol.lambda_min_eig = search.best_min_eig;
    const auto& f = sol.interpolant;
    for (std::size_t i = 0; i < prob.size(); ++i)
        sol.max_residual = std::max(sol.max_residual, std::abs(f(prob.nodes[i]) - prob.targets[i]));
    sol.derivative_at_zero = derivative_at_origin(f);
    sol.sup_norm = boundary_sup_norm(f);

    if (sol.max_residual > 1e-7 * bound) {
        std::ostringstream os;
        os << "node residual " << sol.max_residual << " exceeds tolerance";
        throw marginal(os.str());
    }
    if (sol.derivative_at_zero > 1e-7 * bound) {
        std::ostringstream os;
        os << "|f'(0)| = " << sol.derivative_at_zero << " exceeds tolerance";
        throw Error(ErrorKind::Degenerate, os.str(), sol.derivative_at_zero);
    }
    if (sol.sup_norm.value > bound * (1.0 + 1e-7)) {
        std::ostringstream os;
        os << "boundary sup norm " << sol.sup_norm.value << " exceeds the bound";
        throw marginal(os.str());
    }
    return sol;
}

ScalarProblem zero_first(const ScalarProblem& prob) {
    const auto z0 = prob.zero_index();
    if (!z0) throw_invalid("no node at the origin; use family_feasibility for this problem");
    ScalarProblem out = prob;
    std::rotate(out.nodes.begin(), out.nodes.begin() + static_cast<std::ptrdiff_t>(*z0),
                out.nodes.begin() + static_cast<std::ptrdiff_t>(*z0) + 1);
    std::rotate(out.targets.begin(), out.targets.begin() + static_cast<std::ptrdiff_t>(*z0),
                out.targets.begin() + static_cast<std::ptrdiff_t>(*z0) + 1);
    return out;
}

ComplexMatrix zero_node_gram(const std::vector<DiskPoint>& nodes) {
    if (nodes.empty() || nodes[0].value() != Complex(0.0, 0.0)) throw_invalid("first node must be the origin");
    require_distinct(nodes);
    const auto n = static_cast<Eigen::Index>(nodes.size());
    ComplexMatrix g = ComplexMatrix::Zero(n + 1, n + 1);
    g(0, 0) = 1.0;
    g(1, 1) = 1.0;
    for (Eigen::Index i = 1; i < n; ++i) {
        const Complex zi = nodes[static_cast<std::size_t>(i)];
        g(0, i + 1) = 1.0;
        g(i + 1, 0) = 1.0;
        g(1, i + 1) = std::conj(zi);
        g(i + 1, 1) = zi;
        for (Eigen::Index j = 1; j < n; ++j) {
            const Complex zj = nodes[static_cast<std::size_t>(j)];
            g(i + 1, j + 1) = 1.0 / (1.0 - zi * std::conj(zj));
        }
    }
    return g;
}

namespace {

std::vector<Complex> doubled_targets(const ScalarProblem& p) {
    std::vector<Complex> u;
    u.reserve(p.size() + 1);
    u.push_back(p.targets[0]);
    u.insert(u.end(), p.targets.begin(), p.targets.end());
    return u;
}

}  // namespace

HermitianMatrix zero_node_matrix(const ScalarProblem& prob, double bound) {
    if (!(bound > 0.0)) throw_invalid("bound A must be positive");
    const ScalarProblem p = zero_first(prob);
    ComplexMatrix m = zero_node_gram(p.nodes);
    const std::vector<Complex> u = doubled_targets(p);
    const double a2 = bound * bound;
    for (Eigen::Index a = 0; a < m.rows(); ++a)
        for (Eigen::Index b = 0; b < m.cols(); ++b) m(a, b) *= a2 - u[a] * std::conj(u[b]);
    return HermitianMatrix(m);
}

double minimal_norm_zero(const ScalarProblem& prob) {
    const ScalarProblem p = zero_first(prob);
    const ComplexMatrix g = zero_node_gram(p.nodes);
    const std::vector<Complex> u = doubled_targets(p);
    ComplexMatrix w = g;
    for (Eigen::Index a = 0; a < w.rows(); ++a)
        for (Eigen::Index b = 0; b < w.cols(); ++b) w(a, b) *= u[a] * std::conj(u[b]);
    return std::sqrt(std::max(0.0, generalized_max_eigenvalue(HermitianMatrix(w), HermitianMatrix(g))));
}

int FourierFunction::top_frequency() const {
    int top = 0;
    for (const auto& [m, c] : coefficients)
        if (c != Complex(0.0, 0.0)) top = std::max(top, std::abs(m));
    return top;
}

Complex FourierFunction::eval(double t) const {
    Complex v(0.0, 0.0);
    for (const auto& [m, c] : coefficients) v += c * std::polar(1.0, m * t);
    return v;
}

namespace {

// Finite section of (I - P) M_f P. Only rows with frequency <= 1 survive
// (I - P); columns and rows that vanish identically are dropped up front.
class HankelSection {
public:
    HankelSection(const FourierFunction& f, int n) {
        if (n < 1) throw_invalid("truncation must be >= 1");
        auto coeff = [&](int m) {
            const auto it = f.coefficients.find(m);
            return it == f.coefficients.end() ? Complex(0.0, 0.0) : it->second;
        };
        // low rows: frequencies -n..1, stored at index a + n
        const int low = n + 2;
        col0_.resize(low);
        col1_.resize(low);
        for (int a = -n; a <= 1; ++a) {
            col0_(a + n) = coeff(a);
            col1_(a + n) = coeff(a - 1);
        }
        std::vector<ComplexVector> cols;
        for (int m = 2; m <= n; ++m) {
            ComplexVector c(low);
            for (int a = -n; a <= 1; ++a) c(a + n) = coeff(a - m);
            if (!c.isZero(0.0)) cols.push_back(c);
        }
        for (int a = 0; a < low; ++a) {
            bool keep = a == n || a == n + 1 || col0_(a) != Complex(0.0, 0.0) || col1_(a) != Complex(0.0, 0.0);
            for (const auto& c : cols) keep = keep || c(a) != Complex(0.0, 0.0);
            if (keep) rows_.push_back(a);
        }
        const auto nr = static_cast<Eigen::Index>(rows_.size());
        rest_.resize(nr, static_cast<Eigen::Index>(cols.size()));
        ComplexVector c0(nr), c1(nr);
        for (Eigen::Index r = 0; r < nr; ++r) {
            const int a = rows_[static_cast<std::size_t>(r)];
            if (a == n) row0_ = r;
            c0(r) = col0_(a);
            c1(r) = col1_(a);
            for (std::size_t j = 0; j < cols.size(); ++j) rest_(r, static_cast<Eigen::Index>(j)) = cols[j](a);
        }
        col0_ = c0;
        col1_ = c1;
    }

    double norm(const KernelParam& p) const {
        const Complex alpha = p.alpha();
        const double beta = p.beta();
        ComplexMatrix y(rest_.rows(), rest_.cols() + 1);
        y.col(0) = alpha * col0_ + beta * col1_;
        y.rightCols(rest_.cols()) = rest_;
        // (I - P) on the low block: remove the component along u = alpha e_0 + beta e_1.
        for (Eigen::Index j = 0; j < y.cols(); ++j) {
            const Complex coef = std::conj(alpha) * y(row0_, j) + beta * y(row0_ + 1, j);
            y(row0_, j) -= alpha * coef;
            y(row0_ + 1, j) -= beta * coef;
        }
        return operator_norm(y);
    }

private:
    ComplexVector col0_, col1_;
    std::vector<int> rows_;
    Eigen::Index row0_ = 0;
    ComplexMatrix rest_;
};

double section_sup(const FourierFunction& f, int n, const SphereDomain& dom, KernelParam* where) {
    const HankelSection section(f, n);
    const SphereMax best = maximize_over_sphere([&](const KernelParam& p) { return section.norm(p); }, dom);
    if (where) *where = best.param;
    return best.value;
}

}  // namespace

double compressed_hankel_norm(const FourierFunction& f, int truncation, const KernelParam& p) {
    return HankelSection(f, truncation).norm(p);
}

DistanceEstimate dist_to_subalgebra(const FourierFunction& f, int truncation, const SphereDomain& dom) {
    const int top = f.top_frequency();
    if (truncation < 2 * top + 4) {
        std::ostringstream os;
        os << "truncation " << truncation << " is below 2M+4 = " << 2 * top + 4;
        throw_invalid(os.str());
    }
    DistanceEstimate out;
    out.value = section_sup(f, truncation, dom, &out.param);
    const double coarse = section_sup(f, truncation / 2, dom, nullptr);
    out.error_estimate = std::abs(out.value - coarse);
    return out;
}

}  // namespace h1pick
