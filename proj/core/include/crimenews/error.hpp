#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crimenews {

enum class ErrorCode {
    InvalidArgument,
    Io,
    UnrecognizedSchema,
    AmbiguousSchema,
    MalformedValue,
    EmptyDataset,
    DuplicatePriority,
    UnknownAttribute,
    EmptyVocabulary,
    UnknownTerm,
    KTooLarge,
    EmptyCorpus,
    EmptyInput,
    DegenerateData,
    MissingStageOutput,
    Validation,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace crimenews
