#pragma once

#include <stdexcept>
#include <string>

namespace fracboost {

// Base for all library errors so callers can catch the whole family.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem failures: missing inputs, unwritable outputs.
class FileError : public Error {
public:
    using Error::Error;
};

// Schema config violations: duplicate columns, missing target, bad tokens.
class SchemaError : public Error {
public:
    using Error::Error;
};

// Data contract violations: CSV/header mismatches, unparseable cells,
// model/data dimension mismatches.
class DataError : public Error {
public:
    using Error::Error;
};

// Pearson correlation on a constant sequence is undefined and must be
// surfaced, never silently reported as zero.
class UndefinedCorrelationError : public Error {
public:
    using Error::Error;
};

}  // namespace fracboost
