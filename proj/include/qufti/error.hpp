// qufti/error.hpp
//
// Exception hierarchy shared by all qufti modules.  Every failure mode that
// the library reports maps onto one of these types so callers can translate
// them into exit codes or test diagnostics without string matching.

#pragma once

#include <stdexcept>
#include <string>

namespace qufti {

/// Base class of all qufti exceptions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A dimension/count argument is structurally invalid (e.g. zero modes).
class InvalidDimensionError : public Error {
public:
    using Error::Error;
};

/// The reference-mode rule 1 <= d < m was violated: at least one
/// interferometer arm must stay phase-free to serve as a reference.
class ReferenceModeError : public Error {
public:
    using Error::Error;
};

/// Mismatched argument sizes (vector lengths, matrix dimensions).
class ArityError : public Error {
public:
    using Error::Error;
};

/// A matrix had the wrong shape for the requested operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// An input exceeds a hard cost guard (permanents grow as 2^n).
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// Photon configurations are inconsistent (e.g. photon totals differ).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// A mode or outcome index is out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// A probability left its tolerated domain (negative beyond rounding,
/// normalization broken, ...).
class ProbabilityError : public Error {
public:
    using Error::Error;
};

/// A unitarity invariant failed (defect above tolerance).
class UnitarityError : public Error {
public:
    using Error::Error;
};

/// A scenario document violated the schema; the message carries the
/// offending field path.
class ScenarioError : public Error {
public:
    using Error::Error;
};

/// Every optimizer start diverged or hit a singular objective; the message
/// carries per-start diagnostics.
class NoOptimumError : public Error {
public:
    using Error::Error;
};

/// File I/O failed; the message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qufti
