#include "h1pick/errors.hpp"

namespace h1pick {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::SingularGram: return "singular-gram";
        case ErrorKind::Infeasible: return "infeasible";
        case ErrorKind::Degenerate: return "degenerate-data";
        case ErrorKind::MarginalData: return "marginal-data";
        case ErrorKind::Evaluation: return "evaluation";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace h1pick
