#pragma once

#include <stdexcept>
#include <string>

namespace steenrod {

/// A caller broke a documented precondition (bad indices, mismatched dimensions).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Input data (space documents, maps) failed validation.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation needs chain degrees beyond the configured degree cap.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The product-basis guard tripped ("desk-scale exceeded").
class ResourceLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical guarantee failed at runtime. Always an implementation bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace steenrod
