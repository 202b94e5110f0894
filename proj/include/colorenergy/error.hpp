#ifndef COLORENERGY_ERROR_HPP
#define COLORENERGY_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace colorenergy
{
    enum class ErrorKind
    {
        InvalidParams,
        MalformedInput,
        SubsetTooSmall,
        VertexOutOfRange,
        InvalidColorCount,
        CapacityExceeded,
        NoCompatibleOrder,
        IncompatibleOrder,
        HypothesisViolated,
        ReservoirTooSmall,
        NotAReservoir,
        InsufficientSavings,
        ChapterGuaranteeFailed,
        CapExceeded,
        ConstraintViolated,
        InvariantViolated,
        UnknownCommand,
        IoError
    };

    auto error_kind_name(ErrorKind kind) -> std::string_view;

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string & message) :
            std::runtime_error(message),
            _kind(kind)
        {
        }

        auto kind() const -> ErrorKind { return _kind; }

    private:
        ErrorKind _kind;
    };

    [[noreturn]] inline auto fail(ErrorKind kind, const std::string & message) -> void
    {
        throw Error(kind, message);
    }
}

#endif
