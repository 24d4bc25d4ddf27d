#ifndef XWORD_ERROR_HPP
#define XWORD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace xword {

enum class Errc {
    // grid / dictionary validation
    OverlapSameOrientation,
    DuplicateId,
    LengthTooSmall,
    ValidationError,
    UnknownLetter,
    // evaluation
    UnknownSlot,
    UnknownWord,
    InvalidAssignment,
    // io
    SyntaxError,
    // solvers
    BudgetExceeded,
    PreconditionViolated,
    ReuseRequired,
    NotAVertexCover,
    TooLargeForExact,
    InvalidEpsilon,
    Overflow,
    // generators
    BadSum,
    EdgeCountEqualsK,
    IsolatedVertex,
    NotRestrictedForm,
    MalformedWitness,
    WitnessRejected,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
public:
    Error(Errc kind, std::string msg, int line = 0)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + msg +
                             (line > 0 ? " (line " + std::to_string(line) + ")" : "")),
          kind_(kind),
          line_(line) {}

    Errc kind() const { return kind_; }
    int line() const { return line_; }

private:
    Errc kind_;
    int line_;
};

[[noreturn]] inline void fail(Errc kind, const std::string& msg, int line = 0) {
    throw Error(kind, msg, line);
}

// Integer helpers that refuse to overflow silently.
long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

}  // namespace xword

#endif
