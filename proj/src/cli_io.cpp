#include "h1pick/cli_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "h1pick/format.hpp"
#include "h1pick/metric_twopoint.hpp"

namespace h1pick {

using nlohmann::json;

std::string_view to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::Scalar: return "scalar";
        case ProblemKind::Matrix: return "matrix";
        case ProblemKind::Metric: return "metric";
        case ProblemKind::Distance: return "distance";
    }
    return "unknown";
}

ScalarProblem ProblemFile::scalar() const {
    if (kind == ProblemKind::Matrix) {
        if (k != 1) throw_invalid("matrix problem with k > 1 cannot be used as a scalar problem");
        std::vector<Complex> t;
        for (const auto& m : matrix_targets) t.push_back(m(0, 0));
        return ScalarProblem(nodes, t, bound);
    }
    if (scalar_targets.empty()) throw_invalid("targets: required for this command");
    return ScalarProblem(nodes, scalar_targets, bound);
}

MatrixProblem ProblemFile::matrix() const {
    if (kind == ProblemKind::Matrix) {
        if (matrix_targets.empty()) throw_invalid("targets: required for this command");
        return MatrixProblem(nodes, matrix_targets, bound);
    }
    return MatrixProblem::from_scalar(scalar());
}

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
    throw_invalid(path + ": " + msg);
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) field_error(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) field_error(path, "must be finite");
    return v;
}

Complex complex_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) field_error(path, "expected a complex number as [re, im]");
    return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

int int_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) field_error(path, "expected an integer");
    return j.get<int>();
}

std::string idx(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

std::vector<DiskPoint> parse_nodes(const json& j) {
    if (!j.is_array()) field_error("nodes", "expected a list of [re, im] pairs");
    std::vector<DiskPoint> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Complex z = complex_at(j[i], idx("nodes", i));
        if (!(std::abs(z) <= 1.0 - DiskPoint::kBoundaryMargin)) {
            std::ostringstream os;
            os << "|z| = " << std::abs(z) << " is not in the open unit disk";
            field_error(idx("nodes", i), os.str());
        }
        for (std::size_t p = 0; p < out.size(); ++p)
            if (std::abs(out[p].value() - z) < ScalarProblem::kMinSeparation)
                field_error(idx("nodes", i), "duplicates " + idx("nodes", p));
        out.emplace_back(z);
    }
    return out;
}

ComplexMatrix parse_matrix(const json& j, int k, const std::string& path) {
    if (!j.is_array()) field_error(path, "expected a list of rows");
    if (static_cast<int>(j.size()) != k) {
        std::ostringstream os;
        os << "has " << j.size() << " rows, expected " << k;
        field_error(path, os.str());
    }
    ComplexMatrix m(k, k);
    for (int r = 0; r < k; ++r) {
        const std::string rp = idx(path, static_cast<std::size_t>(r));
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array()) field_error(rp, "expected a row of [re, im] pairs");
        if (static_cast<int>(row.size()) != k) {
            std::ostringstream os;
            os << "row has " << row.size() << " entries, expected " << k;
            field_error(rp, os.str());
        }
        for (int c = 0; c < k; ++c)
            m(r, c) = complex_at(row[static_cast<std::size_t>(c)], idx(rp, static_cast<std::size_t>(c)));
    }
    return m;
}

SphereDomain parse_scan(const json& j) {
    if (!j.is_object()) field_error("scan", "expected an object");
    SphereDomain d;
    for (const auto& [key, v] : j.items()) {
        const std::string path = "scan." + key;
        if (key == "n_r") d.n_r = int_at(v, path);
        else if (key == "n_theta") d.n_theta = int_at(v, path);
        else if (key == "refine_rounds") d.refine_rounds = int_at(v, path);
        else if (key == "refine_shrink") d.refine_shrink = number_at(v, path);
        else if (key == "refine_candidates") d.refine_candidates = int_at(v, path);
        else field_error(path, "unknown field");
    }
    try {
        d.validate();
    } catch (const Error& e) {
        field_error("scan", e.what());
    }
    return d;
}

FourierFunction parse_fourier(const json& j) {
    if (!j.is_array()) field_error("fourier", "expected a list of [m, re, im] triples");
    FourierFunction f;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = idx("fourier", i);
        if (!j[i].is_array() || j[i].size() != 3) field_error(p, "expected [m, re, im]");
        const int m = int_at(j[i][0], p + "[0]");
        f.coefficients[m] += Complex(number_at(j[i][1], p + "[1]"), number_at(j[i][2], p + "[2]"));
    }
    return f;
}

std::string located(std::string_view text, std::size_t byte, const std::string& what) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << what;
    return os.str();
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw_invalid(located(text, e.byte > 0 ? e.byte - 1 : 0, "malformed problem file"));
    }
    if (!doc.is_object()) throw_invalid("problem file must be a JSON object");

    static const std::vector<std::string> known = {"version", "kind",  "nodes", "targets",   "bound",
                                                   "scan",    "seed",  "k",     "fourier",   "truncation"};
    for (const auto& [key, v] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) field_error(key, "unknown field");

    ProblemFile pf;
    if (!doc.contains("version")) field_error("version", "required");
    pf.version = int_at(doc["version"], "version");
    if (pf.version != ProblemFile::kVersion) {
        std::ostringstream os;
        os << "unsupported version " << pf.version << " (expected " << ProblemFile::kVersion << ")";
        field_error("version", os.str());
    }
    if (!doc.contains("kind") || !doc["kind"].is_string())
        field_error("kind", "required, one of scalar, matrix, metric, distance");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "scalar") pf.kind = ProblemKind::Scalar;
    else if (kind == "matrix") pf.kind = ProblemKind::Matrix;
    else if (kind == "metric") pf.kind = ProblemKind::Metric;
    else if (kind == "distance") pf.kind = ProblemKind::Distance;
    else field_error("kind", "unknown kind '" + kind + "'");

    if (doc.contains("nodes")) pf.nodes = parse_nodes(doc["nodes"]);
    if (doc.contains("bound")) {
        pf.bound = number_at(doc["bound"], "bound");
        if (!(*pf.bound > 0.0)) field_error("bound", "must be positive");
    }
    if (doc.contains("scan")) pf.scan = parse_scan(doc["scan"]);
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) field_error("seed", "expected a nonnegative integer");
        pf.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("k")) {
        if (pf.kind != ProblemKind::Matrix) field_error("k", "only allowed for matrix problems");
        pf.k = int_at(doc["k"], "k");
        if (pf.k < 1) field_error("k", "must be >= 1");
    }
    if (doc.contains("fourier") && pf.kind != ProblemKind::Distance)
        field_error("fourier", "only allowed for distance problems");
    if (doc.contains("truncation")) {
        if (pf.kind != ProblemKind::Distance) field_error("truncation", "only allowed for distance problems");
        pf.truncation = int_at(doc["truncation"], "truncation");
    }

    const bool has_targets = doc.contains("targets");
    if (has_targets && !doc["targets"].is_array()) field_error("targets", "expected a list");
    if (has_targets && doc["targets"].size() != pf.nodes.size()) {
        std::ostringstream os;
        os << "has " << doc["targets"].size() << " entries but there are " << pf.nodes.size() << " nodes";
        field_error("targets", os.str());
    }

    switch (pf.kind) {
        case ProblemKind::Scalar:
        case ProblemKind::Metric:
            if (pf.nodes.empty()) field_error("nodes", "required and nonempty");
            if (pf.kind == ProblemKind::Metric && pf.nodes.size() != 2)
                field_error("nodes", "a metric problem has exactly two nodes");
            if (pf.kind == ProblemKind::Scalar && !has_targets) field_error("targets", "required");
            if (has_targets)
                for (std::size_t i = 0; i < doc["targets"].size(); ++i)
                    pf.scalar_targets.push_back(complex_at(doc["targets"][i], idx("targets", i)));
            break;
        case ProblemKind::Matrix:
            if (pf.nodes.empty()) field_error("nodes", "required and nonempty");
            if (has_targets) {
                const json& t = doc["targets"];
                if (!doc.contains("k")) {
                    if (!t[0].is_array()) field_error("targets[0]", "expected a list of rows");
                    pf.k = static_cast<int>(t[0].size());
                    if (pf.k < 1) field_error("targets[0]", "empty matrix");
                }
                for (std::size_t i = 0; i < t.size(); ++i)
                    pf.matrix_targets.push_back(parse_matrix(t[i], pf.k, idx("targets", i)));
            }
            break;
        case ProblemKind::Distance:
            if (!doc.contains("fourier")) field_error("fourier", "required for distance problems");
            pf.fourier = parse_fourier(doc["fourier"]);
            if (!pf.nodes.empty() || has_targets) field_error("nodes", "not used by distance problems");
            break;
    }
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open problem file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Infeasible: return 2;
        case ErrorKind::InvalidInput: return 3;
        case ErrorKind::SingularGram:
        case ErrorKind::Degenerate:
        case ErrorKind::MarginalData:
        case ErrorKind::Evaluation: return 4;
        case ErrorKind::Io: return 1;
    }
    return 1;
}

namespace {

// Reports carry 12 significant digits so that exact answers print cleanly.
double num(double v) {
    if (!std::isfinite(v)) return v;
    return std::stod(format_number(v));
}

json cjson(Complex z) { return json::array({num(z.real()), num(z.imag())}); }

json param_json(const KernelParam& p) {
    return {{"r", num(p.r)}, {"theta", num(p.theta)}, {"alpha", cjson(p.alpha())}, {"beta", num(p.beta())}};
}

json grid_json(const SphereDomain& d) {
    return {{"n_r", d.n_r},
            {"n_theta", d.n_theta},
            {"refine_rounds", d.refine_rounds},
            {"refine_shrink", d.refine_shrink},
            {"refine_candidates", d.refine_candidates}};
}

struct Options {
    std::string path;
    std::optional<double> bound;
    std::string grid;
    std::optional<int> refine;
    std::string via = "family";
    std::optional<std::uint64_t> seed;
    int samples = 4096;
    std::string out;
    int trials = 100;
    std::string targets = "gaussian";
    std::optional<int> truncation;
};

SphereDomain domain_for(const ProblemFile& pf, const Options& o) {
    SphereDomain d = pf.scan;
    if (!o.grid.empty()) {
        const auto x = o.grid.find_first_of("xX");
        try {
            if (x == std::string::npos) throw std::invalid_argument("no separator");
            std::size_t used = 0;
            d.n_r = std::stoi(o.grid.substr(0, x), &used);
            if (used != x) throw std::invalid_argument("trailing");
            const std::string rest = o.grid.substr(x + 1);
            d.n_theta = std::stoi(rest, &used);
            if (used != rest.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw_invalid("--grid expects NRxNT, e.g. 64x128 (got '" + o.grid + "')");
        }
    }
    if (o.refine) d.refine_rounds = *o.refine;
    d.validate();
    return d;
}

double bound_for(const ProblemFile& pf, const Options& o, std::string_view cmd) {
    if (o.bound) {
        if (!(*o.bound > 0.0)) throw_invalid("--bound must be positive");
        return *o.bound;
    }
    if (pf.bound) return *pf.bound;
    throw_invalid(std::string(cmd) + " needs a bound: pass --bound or set \"bound\" in the problem file");
}

void require_kind(const ProblemFile& pf, std::initializer_list<ProblemKind> kinds, std::string_view cmd) {
    if (std::find(kinds.begin(), kinds.end(), pf.kind) != kinds.end()) return;
    throw_invalid(std::string(cmd) + " does not accept a " + std::string(to_string(pf.kind)) + " problem");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    return f;
}

int cmd_check(const ProblemFile& pf, const Options& o, std::ostream& out) {
    require_kind(pf, {ProblemKind::Scalar}, "check");
    const ScalarProblem prob = pf.scalar();
    const double a = bound_for(pf, o, "check");
    const SphereDomain dom = domain_for(pf, o);
    const bool moebius = o.via == "theorem3" || o.via == "moebius";
    const FeasibilityReport rep = moebius ? moebius_feasibility(prob, a, dom) : family_feasibility(prob, a, dom);
    json j = {{"command", "check"},
              {"bound", a},
              {"via", std::string(to_string(rep.via))},
              {"status", std::string(to_string(rep.status))},
              {"min_eig", num(rep.min_eig)},
              {"scale", num(rep.scale)},
              {"certified", rep.certified},
              {"grid", grid_json(rep.grid)}};
    if (rep.worst_param) j["worst_param"] = param_json(*rep.worst_param);
    if (rep.witness_lambda) j["lambda"] = cjson(*rep.witness_lambda);
    if (prob.zero_index()) {
        // The alpha = 0 kernel empties the origin row, so the family test can
        // only say "marginal" there; the exact test is reported alongside.
        const HermitianMatrix z = zero_node_matrix(prob, a);
        const double me = min_eigenvalue(z);
        j["exact"] = {{"status", std::string(to_string(classify_psd(me, z.scale())))}, {"min_eig", num(me)}};
    }
    out << j.dump(2) << '\n';
    return rep.status == PsdStatus::Infeasible ? 2 : 0;
}

int cmd_solve(const ProblemFile& pf, const Options& o, std::ostream& out) {
    require_kind(pf, {ProblemKind::Scalar}, "solve");
    if (o.samples < 8) throw_invalid("--samples must be >= 8");
    const ScalarProblem prob = pf.scalar();
    const double a = bound_for(pf, o, "solve");
    const Solution sol = solve(prob, a, domain_for(pf, o));
    const auto& f = sol.interpolant;

    json chain = json::array();
    for (const auto& s : f.inner.steps) chain.push_back({{"node", cjson(s.node)}, {"gamma", cjson(s.gamma)}});
    json residuals = json::array();
    for (std::size_t i = 0; i < prob.size(); ++i) residuals.push_back(num(std::abs(f(prob.nodes[i]) - prob.targets[i])));
    const SupNormEstimate sup = boundary_sup_norm(f, o.samples);
    json j = {{"command", "solve"},
              {"bound", a},
              {"lambda", cjson(f.lambda)},
              {"lambda_min_eig", num(sol.lambda_min_eig)},
              {"schur_chain", chain},
              {"schur_tail", cjson(f.inner.tail)},
              {"node_residuals", residuals},
              {"max_residual", num(sol.max_residual)},
              {"derivative_at_zero", num(sol.derivative_at_zero)},
              {"sup_norm", {{"value", num(sup.value)}, {"gap_estimate", num(sup.gap_estimate)}, {"samples", o.samples}}}};
    if (!o.out.empty()) {
        std::ofstream csv = open_out(o.out);
        csv << "theta,re,im,abs\n";
        for (int s = 0; s < o.samples; ++s) {
            const double t = kTwoPi * s / o.samples;
            const Complex v = f(std::polar(1.0, t));
            csv << format_number(t) << ',' << format_number(v.real()) << ',' << format_number(v.imag()) << ','
                << format_number(std::abs(v)) << '\n';
        }
        j["grid_csv"] = o.out;
    }
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_norm(const ProblemFile& pf, const Options& o, std::ostream& out) {
    require_kind(pf, {ProblemKind::Scalar, ProblemKind::Matrix}, "norm");
    const SphereDomain dom = domain_for(pf, o);
    json j = {{"command", "norm"}};
    if (pf.kind == ProblemKind::Scalar) {
        const ScalarProblem prob = pf.scalar();
        const NormResult r = minimal_norm(prob, dom);
        j["minimal_norm"] = num(r.value);
        j["param"] = param_json(r.param);
        if (prob.zero_index()) j["minimal_norm_exact"] = num(minimal_norm_zero(prob));
    } else {
        const MatrixProblem prob = pf.matrix();
        const NormResult r = phi_sup_norm(prob, dom);
        j["family_lower_bound"] = num(r.value);
        j["param"] = param_json(r.param);
        if (prob.zero_index()) {
            const double exact = minimal_matrix_norm_zero(prob);
            j["minimal_norm"] = num(exact);
            j["gap"] = num(exact - r.value);
        }
    }
    j["grid"] = grid_json(dom);
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_metric(const ProblemFile& pf, const Options& o, std::ostream& out) {
    if (pf.nodes.size() != 2) throw_invalid("metric needs exactly two nodes");
    const SphereDomain dom = domain_for(pf, o);
    const MetricResult d1 = constrained_metric_d1(pf.nodes[0], pf.nodes[1], dom);
    json j = {{"command", "metric"},
              {"d_H", num(pseudo_metric_dH(pf.nodes[0], pf.nodes[1]))},
              {"d1", num(d1.value)},
              {"param", param_json(d1.param)}};
    if (pf.scalar_targets.size() == 2 && d1.value > 0.0) {
        const TwoPointRep rep = two_point_representation(pf.scalar_targets[0], pf.scalar_targets[1], d1.value);
        j["two_point"] = {{"b", num(rep.b)}, {"norm", num(rep.norm)}, {"envelope", std::string(to_string(rep.envelope))}};
    }
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_dist(const ProblemFile& pf, const Options& o, std::ostream& out) {
    require_kind(pf, {ProblemKind::Distance}, "dist-alg");
    const int n = o.truncation.value_or(pf.truncation.value_or(64));
    const DistanceEstimate d = dist_to_subalgebra(pf.fourier, n, domain_for(pf, o));
    json j = {{"command", "dist-alg"},
              {"truncation", n},
              {"distance", num(d.value)},
              {"error_estimate", num(d.error_estimate)},
              {"param", param_json(d.param)}};
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_matrix_check(const ProblemFile& pf, const Options& o, std::ostream& out) {
    require_kind(pf, {ProblemKind::Scalar, ProblemKind::Matrix}, "matrix-check");
    const MatrixProblem prob = pf.matrix();
    if (!prob.zero_index()) throw_invalid("matrix-check needs the origin among the nodes");
    const double a = bound_for(pf, o, "matrix-check");
    const SphereDomain dom = domain_for(pf, o);
    const MatrixZeroCheck c = matrix_feasible_zero(prob, a);
    const NormResult fam = phi_sup_norm(prob, dom);
    json j = {{"command", "matrix-check"},
              {"bound", a},
              {"k", prob.k},
              {"status", std::string(to_string(c.status))},
              {"min_eig", num(c.min_eig)},
              {"scale", num(c.scale)},
              {"minimal_norm", num(minimal_matrix_norm_zero(prob))},
              {"family_lower_bound", num(fam.value)},
              {"param", param_json(fam.param)},
              {"grid", grid_json(dom)}};
    out << j.dump(2) << '\n';
    return c.status == PsdStatus::Infeasible ? 2 : 0;
}

int cmd_scan(const ProblemFile& pf, const Options& o, std::ostream& out) {
    require_kind(pf, {ProblemKind::Matrix}, "scan");
    ScanTargets kind = ScanTargets::Gaussian;
    if (o.targets == "scalar-identity") kind = ScanTargets::ScalarIdentity;
    else if (o.targets != "gaussian") throw_invalid("--targets must be gaussian or scalar-identity");
    const std::uint64_t seed = o.seed.value_or(pf.seed.value_or(0));
    const SphereDomain dom = domain_for(pf, o);
    const ScanReport rep = counterexample_scan(pf.nodes, pf.k, o.trials, seed, dom, kind);
    if (o.out.empty()) {
        write_scan_csv(out, rep);
        return 0;
    }
    std::ofstream csv = open_out(o.out);
    write_scan_csv(csv, rep);
    const ScanRow& top = rep.rows[rep.max_gap_row];
    json targets = json::array();
    for (const auto& w : rep.max_gap_targets) {
        json m = json::array();
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < w.cols(); ++c) row.push_back(cjson(w(r, c)));
            m.push_back(row);
        }
        targets.push_back(m);
    }
    json j = {{"command", "scan"},
              {"csv", o.out},
              {"trials", o.trials},
              {"seed", seed},
              {"k", rep.k},
              {"max_gap", {{"trial", top.trial}, {"gap", num(top.gap)}, {"A_true", num(top.a_true)},
                           {"A_family", num(top.a_family)}, {"targets", targets}}},
              {"min_gap", num(rep.min_gap)},
              {"grid", grid_json(dom)}};
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_landscape(const ProblemFile& pf, const Options& o, std::ostream& out) {
    require_kind(pf, {ProblemKind::Scalar}, "landscape");
    const ScalarProblem prob = pf.scalar();
    const double a = bound_for(pf, o, "landscape");
    const SphereDomain dom = domain_for(pf, o);
    std::ofstream file;
    if (!o.out.empty()) file = open_out(o.out);
    std::ostream& csv = o.out.empty() ? out : file;
    csv << "r,theta,min_eig\n";
    for (int i = 0; i < dom.n_r; ++i) {
        const double r = sphere_grid_radius(i, dom.n_r);
        for (int jt = 0; jt < dom.n_theta; ++jt) {
            const double theta = jt * kTwoPi / dom.n_theta;
            csv << format_number(r) << ',' << format_number(theta) << ','
                << format_number(family_min_eig(prob, a, make_param(r, theta))) << '\n';
        }
    }
    return 0;
}

void report_error(std::ostream& err, std::string_view category, const std::string& message,
                  std::optional<double> value = std::nullopt) {
    json j = {{"error", std::string(category)}, {"message", message}};
    if (value) j["value"] = num(*value);
    err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constrained Nevanlinna-Pick interpolation for bounded analytic functions with f'(0) = 0"};
    app.name("h1pick");
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sc) {
        sc->add_option("problem", o.path, "Problem file (JSON)")->required();
        sc->add_option("--grid", o.grid, "Coarse grid NRxNT over the kernel sphere");
        sc->add_option("--refine", o.refine, "Refinement rounds")->check(CLI::NonNegativeNumber);
        return sc;
    };
    auto with_bound = [&](CLI::App* sc) {
        sc->add_option("--bound", o.bound, "Norm bound A");
        return sc;
    };
    auto* check = with_bound(common(app.add_subcommand("check", "Decide feasibility at bound A")));
    check->add_option("--via", o.via, "Criterion")->check(CLI::IsMember({"family", "theorem3", "moebius"}));
    auto* solve_cmd = with_bound(common(app.add_subcommand("solve", "Construct an interpolant")));
    solve_cmd->add_option("--samples", o.samples, "Boundary samples");
    solve_cmd->add_option("--out", o.out, "Write boundary values as CSV theta,re,im,abs");
    common(app.add_subcommand("norm", "Minimal interpolation norm"));
    common(app.add_subcommand("metric", "Pseudo-hyperbolic and constrained metric of two nodes"));
    auto* dist = common(app.add_subcommand("dist-alg", "Distance to the constrained subalgebra"));
    dist->add_option("--truncation", o.truncation, "Finite section size N")->check(CLI::PositiveNumber);
    with_bound(common(app.add_subcommand("matrix-check", "Exact matrix test with a node at the origin")));
    auto* scan = common(app.add_subcommand("scan", "Seeded search for family/matrix norm gaps"));
    scan->add_option("--seed", o.seed, "Base seed");
    scan->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
    scan->add_option("--targets", o.targets, "gaussian or scalar-identity");
    scan->add_option("--out", o.out, "CSV path (stdout when omitted)");
    auto* land = with_bound(common(app.add_subcommand("landscape", "Family min eigenvalue over the (r, theta) grid")));
    land->add_option("--out", o.out, "CSV path (stdout when omitted)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        report_error(err, to_string(ErrorKind::InvalidInput), e.what());
        return exit_code(ErrorKind::InvalidInput);
    }

    try {
        const ProblemFile pf = load_problem(o.path);
        if (*check) return cmd_check(pf, o, out);
        if (*solve_cmd) return cmd_solve(pf, o, out);
        if (app.got_subcommand("norm")) return cmd_norm(pf, o, out);
        if (app.got_subcommand("metric")) return cmd_metric(pf, o, out);
        if (*dist) return cmd_dist(pf, o, out);
        if (app.got_subcommand("matrix-check")) return cmd_matrix_check(pf, o, out);
        if (*scan) return cmd_scan(pf, o, out);
        if (*land) return cmd_landscape(pf, o, out);
    } catch (const Error& e) {
        report_error(err, to_string(e.kind()), e.what(), e.value());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        report_error(err, "internal", e.what());
        return 1;
    }
    return 1;
}

}  // namespace h1pick
