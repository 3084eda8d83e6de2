#pragma once

#include <stdexcept>
#include <string>

namespace easyqg {

// Base of every error the library raises. `code()` is a stable machine-readable
// tag used by the CLI error object.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct SizeLimitError : Error {
    explicit SizeLimitError(const std::string& m) : Error("size_limit", m) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& m) : Error("dimension", m) {}
};

struct EmptyInputError : Error {
    explicit EmptyInputError(const std::string& m) : Error("empty_input", m) {}
};

struct MembershipError : Error {
    explicit MembershipError(const std::string& m) : Error("membership", m) {}
};

struct SingularMatrixError : Error {
    explicit SingularMatrixError(const std::string& m) : Error("singular", m) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& m) : Error("precondition", m) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("parse", m) {}
};

}  // namespace easyqg
