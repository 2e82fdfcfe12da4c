#pragma once
// errors.hpp - exception types shared across the library

#include <stdexcept>
#include <string>

namespace phipi {

// Thrown when an operation that must be exact (polynomial division with
// zero remainder, an algebraic identity precheck) detects a mismatch.
// Carries the index of the first offending coefficient where known.
class exactness_violation : public std::logic_error {
public:
    explicit exactness_violation(const std::string& what, long witness_index = -1)
        : std::logic_error(what), witness_index_(witness_index) {}

    // First differing/non-divisible coefficient index, -1 if not applicable.
    long witness_index() const noexcept { return witness_index_; }

private:
    long witness_index_;
};

} // namespace phipi
