#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace h1pick {

/// Failure categories. The CLI maps each one onto an exit code.
enum class ErrorKind {
    InvalidInput,
    SingularGram,
    Infeasible,
    Degenerate,
    MarginalData,
    Evaluation,
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::optional<double> value = std::nullopt)
        : std::runtime_error(what), kind_(kind), value_(value) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Numeric witness attached to the failure (a minimum eigenvalue, usually).
    std::optional<double> value() const noexcept { return value_; }

private:
    ErrorKind kind_;
    std::optional<double> value_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
    throw Error(ErrorKind::InvalidInput, what);
}

}  // namespace h1pick
