#include "crimenews/error.hpp"

namespace crimenews {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
        case ErrorCode::UnrecognizedSchema: return "UnrecognizedSchema";
        case ErrorCode::AmbiguousSchema: return "AmbiguousSchema";
        case ErrorCode::MalformedValue: return "MalformedValue";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::DuplicatePriority: return "DuplicatePriority";
        case ErrorCode::UnknownAttribute: return "UnknownAttribute";
        case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
        case ErrorCode::UnknownTerm: return "UnknownTerm";
        case ErrorCode::KTooLarge: return "KTooLarge";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::DegenerateData: return "DegenerateData";
        case ErrorCode::MissingStageOutput: return "MissingStageOutput";
        case ErrorCode::Validation: return "Validation";
    }
    return "Unknown";
}

void raise(ErrorCode code, const std::string& message) {
    throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace crimenews
