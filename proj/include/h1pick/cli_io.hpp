#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "h1pick/constrained_pick.hpp"
#include "h1pick/errors.hpp"
#include "h1pick/kernels.hpp"
#include "h1pick/matrix_level.hpp"

namespace h1pick {

enum class ProblemKind { Scalar, Matrix, Metric, Distance };

std::string_view to_string(ProblemKind kind);

/// Parsed problem file (JSON, version 1). Complex numbers are [re, im] pairs.
struct ProblemFile {
    static constexpr int kVersion = 1;

    int version = kVersion;
    ProblemKind kind = ProblemKind::Scalar;
    std::vector<DiskPoint> nodes;
    /// scalar and metric kinds
    std::vector<Complex> scalar_targets;
    /// matrix kind, each k x k
    std::vector<ComplexMatrix> matrix_targets;
    int k = 1;
    std::optional<double> bound;
    SphereDomain scan;
    std::optional<std::uint64_t> seed;
    /// distance kind: e^{imt} coefficients and the section size
    FourierFunction fourier;
    std::optional<int> truncation;

    bool has_targets() const noexcept { return !scalar_targets.empty() || !matrix_targets.empty(); }

    ScalarProblem scalar() const;
    MatrixProblem matrix() const;
};

/// Validates structure, shapes, disk membership and node separation. Errors
/// are invalid-input and name the offending field path or line/column.
ProblemFile parse_problem(std::string_view text);

ProblemFile load_problem(const std::string& path);

/// Process exit code for a failure category:
/// 2 infeasible, 3 invalid input, 4 numerical degeneracy, 1 I/O.
int exit_code(ErrorKind kind);

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, JSON error objects to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace h1pick
