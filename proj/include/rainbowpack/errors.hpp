#ifndef RAINBOWPACK_ERRORS_HPP
#define RAINBOWPACK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rainbowpack {

// Malformed input: bad syntax, negative coordinates, dimension mismatches.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// The instance admits no feasible solution at all (e.g. a single vector
// exceeding the capacity in packing mode).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// A randomized decision kept failing after the configured number of retries.
class RandomizedFailure : public std::runtime_error {
public:
    explicit RandomizedFailure(const std::string& what) : std::runtime_error(what) {}
};

// Requested computation exceeds configured resource limits (interpolation
// degree, brute-force caps, subset-lattice width).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rainbowpack

#endif
