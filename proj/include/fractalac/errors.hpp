#pragma once
#include <stdexcept>
#include <string>

namespace fractalac {

// Two error families, matching the CLI exit-code contract:
// UsageError and its children exit with 2, NumericalError with 4.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamError : UsageError {
    using UsageError::UsageError;
};
struct NoSolution : UsageError {
    using UsageError::UsageError;
};
struct SizeError : UsageError {
    using UsageError::UsageError;
};
struct RegimeError : UsageError {
    using UsageError::UsageError;
};
struct AddressError : UsageError {
    using UsageError::UsageError;
};

struct SingularSystem : NumericalError {
    using NumericalError::NumericalError;
};
struct InfiniteImpedance : NumericalError {
    using NumericalError::NumericalError;
};
struct TopologyError : NumericalError {
    using NumericalError::NumericalError;
};
// An iterate landed on the pole of the Moebius map; index says which one.
struct PoleHit : NumericalError {
    PoleHit(const std::string& msg, long at) : NumericalError(msg), index(at) {}
    long index;
};
struct DegenerateMap : NumericalError {
    using NumericalError::NumericalError;
};
struct DegenerateEigenbasis : NumericalError {
    using NumericalError::NumericalError;
};
struct DegenerateTransform : NumericalError {
    using NumericalError::NumericalError;
};
struct DegenerateCase : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace fractalac
