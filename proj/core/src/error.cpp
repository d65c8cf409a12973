#include "loopmass/error.hpp"

namespace loopmass {

const char* error_kind_name(ErrorKind k) noexcept {
    switch (k) {
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::Cut: return "CutError";
    case ErrorKind::DegenerateC: return "DegenerateC";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::GammaPole: return "GammaPole";
    case ErrorKind::DegenerateKappa: return "DegenerateKappa";
    case ErrorKind::Scale: return "ScaleError";
    case ErrorKind::BoundaryContact: return "BoundaryContact";
    case ErrorKind::EpsTooLarge: return "EpsTooLarge";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::Budget: return "BudgetError";
    case ErrorKind::MarkOnBoundary: return "MarkOnBoundary";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::BadStep: return "BadStep";
    case ErrorKind::PointSwallowed: return "PointSwallowed";
    case ErrorKind::TooManySwallowed: return "TooManySwallowed";
    case ErrorKind::Overflow: return "Overflow";
    }
    return "Error";
}

}  // namespace loopmass
