#pragma once

#include <stdexcept>
#include <string>

namespace rtoric {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad vertex labels, dimension mismatches, parse failures.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A configured size bound (enumeration size, vertex count, truncation) was exceeded.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

/// A precondition of a mathematical statement does not hold for this instance
/// (e.g. the complex is not a homology sphere).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// A computed identity that must hold by theory failed. These are findings,
/// not bugs in the input; the falsification runner records them as data.
class FalsificationFinding : public Error {
public:
    using Error::Error;
};

}  // namespace rtoric
