#pragma once

#include <stdexcept>
#include <string>

namespace luce {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates the invariants of the type it was meant to build.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A choice set was queried that is not part of the rule's family.
class UnknownChoiceSet : public Error {
public:
    using Error::Error;
};

/// Odds were requested for sets that are not subsets of the menu.
class SubsetViolation : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed the documented size bound.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

} // namespace luce
