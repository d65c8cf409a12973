#pragma once

#include <stdexcept>
#include <string>

namespace loopmass {

enum class ErrorKind {
    Pole,
    Cut,
    DegenerateC,
    Range,
    CoincidentPoints,
    GammaPole,
    DegenerateKappa,
    Scale,
    BoundaryContact,
    EpsTooLarge,
    StepTooLarge,
    Budget,
    MarkOnBoundary,
    InvalidPath,
    InsufficientData,
    BadStep,
    PointSwallowed,
    TooManySwallowed,
    Overflow,
};

const char* error_kind_name(ErrorKind k) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace loopmass
