#pragma once

#include <stdexcept>
#include <string>

namespace gsc {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidWeight : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class DegenerateMeasure : public Error {
public:
    using Error::Error;
};

class DegenerateFunction : public Error {
public:
    using Error::Error;
};

class InvalidSets : public Error {
public:
    using Error::Error;
};

class InvalidPartition : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Iterative solver gave up; carries the last observed residual.
class NotConverged : public Error {
public:
    NotConverged(const std::string& what_arg, double residual)
        : Error(what_arg), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace gsc
