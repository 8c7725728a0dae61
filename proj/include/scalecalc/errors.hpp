#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scalecalc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A growth function could not materialize as many values as requested.
// `achieved` is the number of values that were safely determined.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, std::size_t achieved)
        : Error(what), achieved_(achieved) {}

    std::size_t achieved() const noexcept { return achieved_; }

private:
    std::size_t achieved_ = 0;
};

// Sample resolution or spectral band too small for the requested computation.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// Power-law fit impossible on the given data (too short, or non-positive values).
class FitError : public Error {
public:
    using Error::Error;
};

// Operation requires a classified (power-law) growth class.
class UnsupportedClassError : public Error {
public:
    using Error::Error;
};

}  // namespace scalecalc
