#pragma once

#include <stdexcept>

namespace rra {

// Malformed input document (graph/config/cost-model JSON payloads), as
// opposed to a well-formed document describing an invalid object.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace rra
