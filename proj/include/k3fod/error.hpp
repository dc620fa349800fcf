#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3fod {

enum class Errc {
    InvalidDiscriminant,
    NotPositiveDefinite,
    NotNegativeDiscriminant,
    MismatchedDiscriminant,
    ImprimitiveInput,
    NotReduced,
    FieldMismatch,
    NotUpperHalfPlane,
    PrecisionExhausted,
    InconsistentPair,
    ParseError,
};

constexpr std::string_view errc_name(Errc e)
{
    switch (e) {
    case Errc::InvalidDiscriminant: return "InvalidDiscriminant";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::NotNegativeDiscriminant: return "NotNegativeDiscriminant";
    case Errc::MismatchedDiscriminant: return "MismatchedDiscriminant";
    case Errc::ImprimitiveInput: return "ImprimitiveInput";
    case Errc::NotReduced: return "NotReduced";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotUpperHalfPlane: return "NotUpperHalfPlane";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::InconsistentPair: return "InconsistentPair";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace k3fod
