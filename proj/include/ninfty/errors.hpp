#pragma once

#include <stdexcept>
#include <string>

namespace ninfty {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input (group specs, JSON files, CLI arguments).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Structurally valid input that fails a mathematical validation
/// (bad Cayley table, non-closed family in strict mode, mode violation).
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

/// A configured resource cap was exceeded (group order, subgroup
/// enumeration size, arity).
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

}  // namespace ninfty
