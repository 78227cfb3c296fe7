#pragma once

#include <stdexcept>
#include <string>

namespace vos {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad caller input: invalid generators, mismatched groups, non-normal kernels, ...
struct ValidationError : Error {
    using Error::Error;
};

// A configured resource cap was hit. Callers may treat this as "skipped", never
// as success or silent failure.
struct CapError : Error {
    using Error::Error;
};

// A computed structure violated one of its own invariants. Always a bug.
struct InternalError : Error {
    using Error::Error;
};

} // namespace vos
