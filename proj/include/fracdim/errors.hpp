#pragma once

#include <stdexcept>
#include <string>

namespace fracdim {

/// Invalid input or violated precondition (CLI exit code 2).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric failure: root not bracketed, budget exceeded (CLI exit code 3).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracdim
