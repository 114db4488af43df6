#pragma once

#include <stdexcept>
#include <string>

namespace coarse {

// Every failure mode the library reports deliberately. Tasks catch these and
// turn them into report entries; anything else escaping is a bug.
enum class ErrKind {
    MismatchedSpace,
    InvalidPoint,
    InvalidWord,
    BadValence,
    BadDepth,
    BadArgument,
    Disconnected,
    EmptySample,
    TooFewPoints,
    EndpointMismatch,
    HorizonExceeded,
    NotLoxodromic,
    DoesNotFixDirection,
    NotRegularDirection,
    FactorNotDroppable,
    NotGeneralType,
    NotATremble,
    NotAProduct,
    UnknownName,
    TypeMismatch,
    SyntaxError,
};

const char* err_kind_name(ErrKind k);

class CoarseError : public std::runtime_error {
  public:
    CoarseError(ErrKind kind, std::string message, int line = 0, int col = 0)
        : std::runtime_error(std::string(err_kind_name(kind)) + ": " + message),
          kind(kind), line(line), col(col) {}

    ErrKind kind;
    int line; // 1-based, scene errors only; 0 elsewhere
    int col;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& message, int line = 0, int col = 0) {
    throw CoarseError(kind, message, line, col);
}

} // namespace coarse
