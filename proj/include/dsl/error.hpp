#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsl {

enum class ErrorCode {
    InvalidArgument,
    Domain,
    NonNormalizable,
    SingularProductivity,
    EmptyTable,
    MalformedHeader,
    EmptySource,
    AllRowsRejected,
    InsufficientData,
    DegenerateX,
    NoBinsSurvive,
    NegativeCurvature,
    DomainExhausted,
    Io,
};

std::string_view error_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto a stable exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace dsl
