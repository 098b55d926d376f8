#ifndef SFCLUST_ERRORS_HPP
#define SFCLUST_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sfclust {

enum class ErrorCode {
    NonFinite,
    EmptyData,
    NonMonotoneGrid,
    InvalidPartition,
    SparsityOutOfRange,
    NonPositiveDispersion,
    SOutOfRange,
    AllZeroAfterThreshold,
    DegenerateDispersion,
    PartitionMismatch,
    GridMismatch,
    DimensionMismatch,
    KTooLarge,
    DegenerateObjective,
    LengthMismatch,
    InvalidArgument,
    Io,
    Parse,
};

std::string_view error_name(ErrorCode code);

/// True for errors raised by the numerical routines on degenerate input,
/// as opposed to malformed or inconsistent input data.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sfclust

#endif
