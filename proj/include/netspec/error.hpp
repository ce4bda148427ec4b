#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netspec {

enum class ErrorKind {
    InvalidArgument,
    PoleAtAtom,
    NoConvergence,
    AmbiguousRoot,
    NotFound,
    NoRoot,
    Pole,
    MeanOverflow,
    CapExceeded,
    Stagnation,
    InternalConsistency,
    Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class SpectrumError : public std::runtime_error {
public:
    SpectrumError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::PoleAtAtom: return "pole at atom";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::AmbiguousRoot: return "ambiguous root";
    case ErrorKind::NotFound: return "not found";
    case ErrorKind::NoRoot: return "no root";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::MeanOverflow: return "mean overflow";
    case ErrorKind::CapExceeded: return "cap exceeded";
    case ErrorKind::Stagnation: return "stagnation";
    case ErrorKind::InternalConsistency: return "internal consistency";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace netspec
