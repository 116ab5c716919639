#pragma once

#include <stdexcept>
#include <string>

namespace hyperlog {

enum class ErrorKind {
    ZeroSeries,
    IndeterminateDominant,
    IndeterminateSign,
    IndeterminateSplit,
    NotInfinitesimal,
    IdentityMonomial,
    NonMonicLog,
    NotPositive,
    NotGreaterThanR,
    IrrationalConstantPower,
    SupportBelowOmega,
    HNotSmaller,
    NotInvertible,
    SyntaxError,
    TypeError,
};

inline const char* error_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::ZeroSeries: return "ZeroSeries";
    case ErrorKind::IndeterminateDominant: return "IndeterminateDominant";
    case ErrorKind::IndeterminateSign: return "IndeterminateSign";
    case ErrorKind::IndeterminateSplit: return "IndeterminateSplit";
    case ErrorKind::NotInfinitesimal: return "NotInfinitesimal";
    case ErrorKind::IdentityMonomial: return "IdentityMonomial";
    case ErrorKind::NonMonicLog: return "NonMonicLog";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotGreaterThanR: return "NotGreaterThanR";
    case ErrorKind::IrrationalConstantPower: return "IrrationalConstantPower";
    case ErrorKind::SupportBelowOmega: return "SupportBelowOmega";
    case ErrorKind::HNotSmaller: return "HNotSmaller";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::TypeError: return "TypeError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Parse failures carry a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(int line, int col, const std::string& what)
        : Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
          line_(line), col_(col), detail_(what) {}

    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    int line_;
    int col_;
    std::string detail_;
};

}  // namespace hyperlog
