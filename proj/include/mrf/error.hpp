#ifndef MRF_ERROR_HPP
#define MRF_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mrf {

// Stable error codes; the CLI maps them to exit codes and report fields.
enum class ErrorCode {
    Schema,              // malformed instance file (with field context)
    ProbSum,             // probabilities do not sum to one
    NonPositivePotential,
    DanglingVertex,      // vertex/clique index out of range
    PartialMap,          // lumping map missing a domain symbol
    VertexRange,
    EmptySet,
    ZeroConditioning,    // conditioning event has probability zero
    StateSpaceCap,
    SizeCap,             // combinatorial cap (orderings, minimal-graph search, ...)
    NonPositiveTable,
    NotMrf,
    NotChordal,
    NotConnected,
    InvalidOrder,
    Inconsistent,        // violated internal precondition between inputs
    InvariantViolation,  // a proved property failed numerically: a bug
    UnknownName,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

// Raised by fit_canonical_potentials when a table cannot factor over the
// graph's cliques; carries the offending vertex set.
class NotMrfError : public Error {
  public:
    NotMrfError(const std::string& message, std::vector<int> offending_set)
        : Error(ErrorCode::NotMrf, message), offending_set_(std::move(offending_set)) {}

    const std::vector<int>& offending_set() const { return offending_set_; }

  private:
    std::vector<int> offending_set_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace mrf

#endif
