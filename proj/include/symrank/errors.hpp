#pragma once

#include <stdexcept>
#include <string>

namespace symrank {

/// Malformed files, invalid arguments, unsupported patterns for an operation.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An exact search was requested above its configured size limit.
class SizeLimitError : public InputError {
public:
    explicit SizeLimitError(const std::string& what) : InputError(what) {}
};

/// Numeric failures: singular blocks, eigensolver trouble, internal consistency.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A sampled or supplied instance sits on a degenerate locus (zero determinant
/// at a fully specified minor, near-singular block) and no verdict is safe.
class NonGenericInputError : public NumericError {
public:
    explicit NonGenericInputError(const std::string& what) : NumericError(what) {}
};

} // namespace symrank
