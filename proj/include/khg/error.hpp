#pragma once

#include <stdexcept>
#include <string>

namespace khg {

// Error taxonomy shared by all modules. The CLI maps codes to exit codes:
// InvalidArgument/Format -> 2, Guard/Backend -> 3.
enum class ErrorCode {
    InvalidArgument, // precondition violation on an operation input
    Format,          // malformed .khg / DIMACS / solver output text
    Guard,           // a feasibility guard refused the instance size
    Backend,         // solver process failure, timeout, UNKNOWN escalation
    Logic,           // internal invariant broken (a bug, not user error)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }
[[noreturn]] inline void throw_format(const std::string& msg) { throw Error(ErrorCode::Format, msg); }
[[noreturn]] inline void throw_guard(const std::string& msg) { throw Error(ErrorCode::Guard, msg); }
[[noreturn]] inline void throw_backend(const std::string& msg) { throw Error(ErrorCode::Backend, msg); }
[[noreturn]] inline void throw_logic(const std::string& msg) { throw Error(ErrorCode::Logic, msg); }

} // namespace khg
