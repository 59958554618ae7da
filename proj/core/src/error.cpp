#include "pbholo/error.hpp"

namespace pbholo {

AliasingError::AliasingError(const std::string& what, int required_padding)
    : InputError(what), required_padding_(required_padding) {}

SamplingError::SamplingError(const std::string& what, double required_pitch)
    : InputError(what), required_pitch_(required_pitch) {}

}  // namespace pbholo
