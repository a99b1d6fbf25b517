#pragma once

#include <stdexcept>

namespace quatgroup {

/// A bounded search came up empty; the caller may retry with a larger limit.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact identity that must hold did not (non-order lattice, non-integral index, ...).
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Input lies outside the shapes this library knows how to handle.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace quatgroup
