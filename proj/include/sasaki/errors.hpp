#pragma once

#include <stdexcept>
#include <string>

namespace sasaki {

// Bad user input: parameters out of range, constraint violations, malformed files.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure could not reach its stated accuracy.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sasaki
