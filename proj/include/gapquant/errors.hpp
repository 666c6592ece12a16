#pragma once

#include <stdexcept>
#include <string>

namespace gapquant {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownScaleValue : public Error {
public:
    using Error::Error;
};

/// Unreadable stream, missing or unusable header, ragged rows in strict formats.
class MalformedFile : public Error {
public:
    using Error::Error;
};

class DuplicateItemId : public Error {
public:
    using Error::Error;
};

class DuplicateConcernId : public Error {
public:
    using Error::Error;
};

/// A metric was requested over zero concerns.
class EmptyDataset : public Error {
public:
    using Error::Error;
};

class ZeroTotalRisk : public Error {
public:
    using Error::Error;
};

/// No item in a coder table carries two or more codes.
class InsufficientData : public Error {
public:
    using Error::Error;
};

class InvalidThreshold : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

} // namespace gapquant
