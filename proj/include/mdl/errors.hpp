#pragma once

#include <stdexcept>
#include <string>

namespace mdl {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input data (JSON schema problems, bad flags).
struct ParseError : Error {
    using Error::Error;
};

// A value fails a documented precondition (unsupported mode, budget misuse).
struct PreconditionError : Error {
    using Error::Error;
};

// A structural invariant of a type is broken (lattice not closed, bad ground set).
struct StructuralError : Error {
    using Error::Error;
};

// Mathematically impossible state reached (e.g. total mass of a cover is zero).
struct InvariantError : Error {
    using Error::Error;
};

} // namespace mdl
