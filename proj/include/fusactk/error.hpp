#pragma once

#include <stdexcept>
#include <string>

namespace fusactk {

// Malformed input: bad cycle notation, wrong degrees, inconsistent actions.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured size cap (group order, p-group order, chain count) was hit.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its domain (non-Sylow S, non-iso morphism,
// unsaturated system where saturation is required, ...).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fusactk
