#pragma once

#include <stdexcept>
#include <string>

namespace orbiclan {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed document; the message names the JSON path of the offending field.
class ParseError : public Error {
public:
    using Error::Error;
};

// Well-formed document violating the schema (duplicate labels, unknown sides).
class SchemaError : public Error {
public:
    using Error::Error;
};

// Operation called on an input that does not satisfy its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Structurally wrong argument (missing keys, mismatched sizes).
class InputError : public Error {
public:
    using Error::Error;
};

// A cap or finiteness bound was hit; the computation declined to continue.
class RefusalError : public Error {
public:
    using Error::Error;
};

// Internal consistency check failed (e.g. non-integral Cartan quotient).
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace orbiclan
