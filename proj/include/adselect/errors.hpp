#pragma once

#include <stdexcept>
#include <string>

namespace adsel {

// Base class for all typed failures raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File system / stream failures.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input text (CSV cells, JSON documents).
class ParseError : public Error {
public:
    using Error::Error;
};

// Contract violations: bad parameters, dimension mismatches, invalid specs.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Metric is mathematically undefined for the given labels (e.g. single class).
class MetricError : public Error {
public:
    using Error::Error;
};

// A detector could not score a dataset; callers may record the cell as missing.
class DetectorError : public Error {
public:
    using Error::Error;
};

// Persisted artifact does not match the expected schema or version.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace adsel
