#pragma once

#include <stdexcept>
#include <string>

namespace projlab {

// All recoverable failures are reported through one of the exception types
// below so callers can distinguish bad wiring from bad math inputs.

struct LayoutError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

struct InvalidStateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidProjectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OrthogonalityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidResolutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidUnitaryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidGeneratorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedGroupError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GroupError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace projlab
