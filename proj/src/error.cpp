#include <colorenergy/error.hpp>

namespace colorenergy
{
    auto error_kind_name(ErrorKind kind) -> std::string_view
    {
        switch (kind) {
            case ErrorKind::InvalidParams: return "InvalidParams";
            case ErrorKind::MalformedInput: return "MalformedInput";
            case ErrorKind::SubsetTooSmall: return "SubsetTooSmall";
            case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
            case ErrorKind::InvalidColorCount: return "InvalidColorCount";
            case ErrorKind::CapacityExceeded: return "CapacityExceeded";
            case ErrorKind::NoCompatibleOrder: return "NoCompatibleOrder";
            case ErrorKind::IncompatibleOrder: return "IncompatibleOrder";
            case ErrorKind::HypothesisViolated: return "HypothesisViolated";
            case ErrorKind::ReservoirTooSmall: return "ReservoirTooSmall";
            case ErrorKind::NotAReservoir: return "NotAReservoir";
            case ErrorKind::InsufficientSavings: return "InsufficientSavings";
            case ErrorKind::ChapterGuaranteeFailed: return "ChapterGuaranteeFailed";
            case ErrorKind::CapExceeded: return "CapExceeded";
            case ErrorKind::ConstraintViolated: return "ConstraintViolated";
            case ErrorKind::InvariantViolated: return "InvariantViolated";
            case ErrorKind::UnknownCommand: return "UnknownCommand";
            case ErrorKind::IoError: return "IoError";
        }
        return "Unknown";
    }
}
