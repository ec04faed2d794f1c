#pragma once

#include <stdexcept>
#include <string>

namespace pdeid {

enum class ErrorCode {
    Unstable,
    NonFinite,
    NotConverged,
    TooShort,
    WindowOutOfRange,
    DegenerateLabels,
    DimensionMismatch,
    UntrainedModel,
    MaskMismatch,
    EmptyMask,
    LengthMismatch,
    NoFrontDetected,
    DegenerateAmplitude,
    IllConditioned,
    DataError,
    UsageError,
};

/// Exception carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UntrainedModel: return "UntrainedModel";
    case ErrorCode::MaskMismatch: return "MaskMismatch";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NoFrontDetected: return "NoFrontDetected";
    case ErrorCode::DegenerateAmplitude: return "DegenerateAmplitude";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DataError: return "DataError";
    case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

} // namespace pdeid
