#pragma once

#include <stdexcept>
#include <string>

namespace noisylis {

/// Input sequence is not a permutation of 1..n (duplicates, gaps, out of range).
class MalformedInput : public std::invalid_argument {
public:
    explicit MalformedInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric parameter lies outside its admissible range.
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Two inputs that must describe the same element set do not.
class InconsistentInput : public std::invalid_argument {
public:
    explicit InconsistentInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A quadratic oracle was asked to run above its size cap.
class SizeCapExceeded : public std::length_error {
public:
    explicit SizeCapExceeded(const std::string& what) : std::length_error(what) {}
};

}  // namespace noisylis
