#include "h1pick/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "h1pick/errors.hpp"

namespace h1pick {

std::string_view to_string(PsdStatus status) {
    switch (status) {
        case PsdStatus::Feasible: return "feasible";
        case PsdStatus::Marginal: return "marginal";
        case PsdStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

PsdStatus classify_psd(double min_eig, double scale, double psd_tol) {
    const double band = psd_tol * scale;
    if (min_eig < -band) return PsdStatus::Infeasible;
    if (min_eig <= band) return PsdStatus::Marginal;
    return PsdStatus::Feasible;
}

double matrix_scale(const ComplexMatrix& m) {
    double s = 1.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) s = std::max(s, std::abs(m(i, j)));
    return s;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& entries, double hermitian_tol) {
    if (entries.rows() < 1 || entries.rows() != entries.cols()) {
        std::ostringstream os;
        os << "Hermitian matrix must be square with dim >= 1 (got " << entries.rows() << "x" << entries.cols()
           << ")";
        throw_invalid(os.str());
    }
    if (!entries.allFinite()) throw_invalid("Hermitian matrix has non-finite entries");
    scale_ = matrix_scale(entries);
    double worst = -1.0;
    Eigen::Index wi = 0, wj = 0;
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
        for (Eigen::Index j = i; j < entries.cols(); ++j) {
            const double d = std::abs(entries(i, j) - std::conj(entries(j, i)));
            if (d > worst) {
                worst = d;
                wi = i;
                wj = j;
            }
        }
    }
    if (worst > hermitian_tol * scale_) {
        std::ostringstream os;
        os << "matrix is not Hermitian: |M(" << wi << "," << wj << ") - conj(M(" << wj << "," << wi
           << "))| = " << worst << " exceeds " << hermitian_tol * scale_;
        throw_invalid(os.str());
    }
    entries_ = (entries + entries.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
    return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.entries(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::Evaluation, "Hermitian eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue(const HermitianMatrix& h) { return hermitian_eigenvalues(h).front(); }

namespace {

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
        throw_invalid(os.str());
    }
}

}  // namespace

double generalized_max_eigenvalue(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_dim(a, b);
    const double bmin = min_eigenvalue(b);
    if (!(bmin > kPsdFloor * b.scale())) {
        std::ostringstream os;
        os << "Gram matrix is not positive definite (min eigenvalue " << bmin << ")";
        throw Error(ErrorKind::SingularGram, os.str(), bmin);
    }
    Eigen::LLT<ComplexMatrix> llt(b.entries());
    const ComplexMatrix& l = llt.matrixL();
    // C = L^{-1} A L^{-*}
    ComplexMatrix tmp = l.triangularView<Eigen::Lower>().solve(a.entries());
    ComplexMatrix c = l.triangularView<Eigen::Lower>().solve(tmp.adjoint()).adjoint();
    c = (c + c.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double deflated_max_eigenvalue(const HermitianMatrix& a, const HermitianMatrix& b, double rank_tol) {
    require_same_dim(a, b);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b.entries());
    const auto& ev = es.eigenvalues();
    const double cut = rank_tol * b.scale();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cut) keep.push_back(i);
    if (keep.empty()) return 0.0;  // compression to the zero space
    if (static_cast<Eigen::Index>(keep.size()) == b.dim() && ev(0) > kPsdFloor * b.scale())
        return generalized_max_eigenvalue(a, b);
    // On the kept eigenvectors B is diagonal, so whitening is a rescale.
    ComplexMatrix w(b.dim(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
        w.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
    ComplexMatrix reduced = w.adjoint() * a.entries() * w;
    reduced = (reduced + reduced.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> rs(reduced, Eigen::EigenvaluesOnly);
    return rs.eigenvalues()(rs.eigenvalues().size() - 1);
}

HermitianMatrix hpd_sqrt(const HermitianMatrix& b) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b.entries());
    const auto& ev = es.eigenvalues();
    if (!(ev(0) > kPsdFloor * b.scale())) {
        std::ostringstream os;
        os << "square root needs a positive definite matrix (eigenvalue " << ev(0) << ")";
        throw Error(ErrorKind::SingularGram, os.str(), ev(0));
    }
    const ComplexMatrix& u = es.eigenvectors();
    ComplexMatrix s = u * ev.cwiseSqrt().asDiagonal() * u.adjoint();
    return HermitianMatrix(s);
}

double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

void SphereDomain::validate() const {
    if (n_r < 2) throw_invalid("sphere grid needs n_r >= 2");
    if (n_theta < 4) throw_invalid("sphere grid needs n_theta >= 4");
    if (refine_rounds < 0) throw_invalid("refine_rounds must be >= 0");
    if (!(refine_shrink > 0.0 && refine_shrink < 1.0)) throw_invalid("refine_shrink must lie in (0, 1)");
    if (refine_candidates < 1) throw_invalid("refine_candidates must be >= 1");
    if (threads < 0) throw_invalid("threads must be >= 0");
}

namespace {

double wrap_periodic(double y, double period) {
    double t = std::fmod(y, period);
    if (t < 0.0) t += period;
    if (t >= period) t = 0.0;
    return t;
}

[[noreturn]] void throw_nonfinite(double x, double y, double v) {
    std::ostringstream os;
    os << "objective returned " << v << " at chart point (" << x << ", " << y << ")";
    throw Error(ErrorKind::Evaluation, os.str());
}

double checked(const std::function<double(double, double)>& f, double x, double y) {
    const double v = f(x, y);
    if (!std::isfinite(v)) throw_nonfinite(x, y, v);
    return v;
}

}  // namespace

ChartMax maximize_on_chart(const std::function<double(double, double)>& objective, const ChartGrid& chart) {
    const SphereDomain& g = chart.grid;
    g.validate();
    if (!(chart.x_hi > chart.x_lo)) throw_invalid("chart needs x_hi > x_lo");
    const int nx = g.n_r;
    const int ny = g.n_theta;
    const double hx0 = (chart.x_hi - chart.x_lo) / (nx - 1);
    const double hy0 = chart.y_period / ny;
    auto xs = [&](int i) { return i == nx - 1 ? chart.x_hi : chart.x_lo + i * hx0; };
    auto ys = [&](int j) { return j * hy0; };

    const std::size_t total = static_cast<std::size_t>(nx) * ny;
    std::vector<double> values(total);
    std::vector<std::exception_ptr> errors(total);

    unsigned workers = g.threads > 0 ? static_cast<unsigned>(g.threads) : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total / 256 + 1)));
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            try {
                values[k] = checked(objective, xs(static_cast<int>(k / ny)), ys(static_cast<int>(k % ny)));
            } catch (...) {
                errors[k] = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        fill(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk;
            const std::size_t e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(fill, b, e);
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    auto is_local_max = [&](std::size_t k) {
        const int i = static_cast<int>(k / ny);
        const int j = static_cast<int>(k % ny);
        for (int di = -1; di <= 1; ++di) {
            const int ii = i + di;
            if (ii < 0 || ii >= nx) continue;
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                const int jj = (j + dj + ny) % ny;
                if (values[static_cast<std::size_t>(ii) * ny + jj] > values[k]) return false;
            }
        }
        return true;
    };
    std::vector<std::size_t> candidates;
    for (std::size_t k : order) {
        if (static_cast<int>(candidates.size()) >= g.refine_candidates) break;
        if (is_local_max(k)) candidates.push_back(k);
    }

    const int m = std::max(1, static_cast<int>(std::lround(1.0 / g.refine_shrink)));
    constexpr int kMaxMoves = 16;
    std::size_t evaluations = total;
    ChartMax best{xs(static_cast<int>(order[0] / ny)), ys(static_cast<int>(order[0] % ny)), values[order[0]], 0};
    for (std::size_t k : candidates) {
        double cx = xs(static_cast<int>(k / ny));
        double cy = ys(static_cast<int>(k % ny));
        double cv = values[k];
        double hx = hx0;
        double hy = hy0;
        for (int round = 0; round < g.refine_rounds; ++round) {
            hx *= g.refine_shrink;
            hy *= g.refine_shrink;
            // Re-center while the best point sits on the window edge, so a
            // candidate can drift further than one coarse cell.
            for (int move = 0; move < kMaxMoves; ++move) {
                double bx = cx, by = cy, bv = cv;
                bool on_edge = false;
                for (int a = -m; a <= m; ++a) {
                    const double x = std::clamp(cx + a * hx, chart.x_lo, chart.x_hi);
                    for (int b = -m; b <= m; ++b) {
                        if (a == 0 && b == 0) continue;
                        const double y = wrap_periodic(cy + b * hy, chart.y_period);
                        const double v = checked(objective, x, y);
                        ++evaluations;
                        if (v > bv) {
                            bx = x;
                            by = y;
                            bv = v;
                            on_edge = (std::abs(a) == m && x != chart.x_lo && x != chart.x_hi) || std::abs(b) == m;
                        }
                    }
                }
                cx = bx;
                cy = by;
                cv = bv;
                if (!on_edge) break;
            }
        }
        if (cv > best.value) best = {cx, cy, cv, 0};
    }
    best.evaluations = evaluations;
    return best;
}

namespace {

double sphere_radius(double psi) { return psi >= 0.5 * kPi ? 1.0 : std::sin(psi); }

}  // namespace

SphereMax maximize_over_sphere(const std::function<double(const KernelParam&)>& objective, const SphereDomain& dom) {
    // Search in (psi, theta) with r = sin(psi): uniform in psi spreads the
    // grid evenly near the r = 1 collapse, where uniform r would be sparse.
    ChartGrid chart{0.0, 0.5 * kPi, kTwoPi, dom};
    const ChartMax res = maximize_on_chart(
        [&](double psi, double theta) { return objective(make_param(sphere_radius(psi), theta)); }, chart);
    return {make_param(sphere_radius(res.x), res.y), res.value, res.evaluations};
}

double sphere_grid_radius(int i, int n_r) {
    return i >= n_r - 1 ? 1.0 : sphere_radius(0.5 * kPi * i / (n_r - 1));
}

std::vector<KernelParam> sphere_grid(const SphereDomain& dom) {
    dom.validate();
    std::vector<KernelParam> out;
    out.reserve(static_cast<std::size_t>(dom.n_r) * dom.n_theta);
    for (int i = 0; i < dom.n_r; ++i) {
        const double r = sphere_grid_radius(i, dom.n_r);
        for (int j = 0; j < dom.n_theta; ++j) out.push_back(make_param(r, j * kTwoPi / dom.n_theta));
    }
    return out;
}

}  // namespace h1pick
