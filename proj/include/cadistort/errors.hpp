#pragma once

#include <stdexcept>
#include <string>

namespace cadistort {

/// Malformed or invalid input: bad cells, duplicate labels, empty margins,
/// out-of-range indices or dimensions. The CLI maps this to exit status 1.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical contract failed (e.g. a theorem-level inequality did not
/// hold). The CLI maps this to exit status 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cadistort
