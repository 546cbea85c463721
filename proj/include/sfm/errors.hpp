#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sfm {

/// Base class for all engine errors.
class SfmError : public std::runtime_error {
public:
    explicit SfmError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated a documented precondition (bad argument, contract breach).
class PreconditionError : public SfmError {
public:
    using SfmError::SfmError;
};

/// A structural function could not be evaluated (missing table row, type
/// mismatch in an expression, arithmetic overflow).
class EvalError : public SfmError {
public:
    using SfmError::SfmError;
};

/// An operation that requires an acyclic graph found a cycle.  The witness
/// path lists node names with first == last.
class CycleError : public SfmError {
public:
    CycleError(const std::string& what, std::vector<std::string> cycle)
        : SfmError(what), cycle_(std::move(cycle)) {}

    const std::vector<std::string>& cycle() const { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

/// An enumeration operation was asked to run over a non-enumerable domain.
class UnsupportedEnumerationError : public SfmError {
public:
    using SfmError::SfmError;
};

/// An enumeration operation exceeded the configured assignment budget.
class BudgetExceededError : public SfmError {
public:
    using SfmError::SfmError;
};

/// A value-level functional-dependency query was given a source fragment the
/// team does not permit.
class UnpermittedFragmentError : public SfmError {
public:
    using SfmError::SfmError;
};

} // namespace sfm
