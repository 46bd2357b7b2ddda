#pragma once

#include <stdexcept>
#include <string>

namespace djcm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

// Roots of the characteristic cubic are too close for the residue expansion.
class DegenerateRoots : public Error {
public:
    using Error::Error;
};

class StepSizeUnderflow : public Error {
public:
    using Error::Error;
};

// An observable whose denominator <A^dag A> vanishes.
class UndefinedObservable : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace djcm
