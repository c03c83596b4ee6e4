#ifndef QUADGRAPH_ERRORS_HPP
#define QUADGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace quadgraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPrimeError : public Error {
public:
    using Error::Error;
};

class EvenPrimeError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

class DepthTooLargeError : public Error {
public:
    using Error::Error;
};

class BothZeroError : public Error {
public:
    using Error::Error;
};

// Raised when a polynomial division that must be exact leaves a remainder.
// Mathematically impossible for dynatomic products; signals an arithmetic bug.
class InexactDivisionError : public Error {
public:
    using Error::Error;
};

class ModulusTooLargeError : public Error {
public:
    using Error::Error;
};

class CheckpointError : public Error {
public:
    using Error::Error;
};

} // namespace quadgraph

#endif
