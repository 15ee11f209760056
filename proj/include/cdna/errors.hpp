#pragma once

#include <stdexcept>
#include <string>

namespace cdna {

/// Base of every error raised by the library. Each subclass names one
/// failure category so callers (and the CLI exit-code mapping) can dispatch
/// on type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or argument lies outside its legal range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A chaotic orbit became non-finite or left its domain twice in a row.
class NumericalDegeneracy : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

/// Operand dimensions or sequence lengths disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

class PermutationError : public Error {
public:
    using Error::Error;
};

/// Decrypted plaintext does not hash to the checksum stored in the envelope.
class ChecksumMismatch : public Error {
public:
    using Error::Error;
};

class ZeroVariance : public Error {
public:
    using Error::Error;
};

class MalformedFile : public Error {
public:
    using Error::Error;
};

class UnsupportedMaxval : public MalformedFile {
public:
    using MalformedFile::MalformedFile;
};

/// A structured text file (key file, sidecar) is syntactically invalid.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace cdna
