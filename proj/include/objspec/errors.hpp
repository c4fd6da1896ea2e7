#pragma once

#include <stdexcept>
#include <string>

namespace objspec {

/// Input data violates a structural invariant (row sums, bad names, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Operands have incompatible shapes (policy vs environment, reward vs environment, ...).
struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// A linear system that should be regular failed to solve; indicates a numerical defect.
struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

/// Formula lies outside the compilable fragment; supply a monitor directly instead.
struct UnsupportedFragment : std::runtime_error {
    explicit UnsupportedFragment(const std::string& what) : std::runtime_error(what) {}
};

/// The support graph branches inside or after a cycle; exact trajectory
/// enumeration is impossible, fall back to Monte Carlo.
struct NotLassoEnumerable : std::runtime_error {
    explicit NotLassoEnumerable(const std::string& what) : std::runtime_error(what) {}
};

/// Return value does not correspond to any realizable trajectory.
struct NotDecodable : std::runtime_error {
    explicit NotDecodable(const std::string& what) : std::runtime_error(what) {}
};

/// Requested conversion between formalisms has no supported construction.
struct UnsupportedEdge : std::runtime_error {
    explicit UnsupportedEdge(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration would exceed the configured size cap.
struct ExplosionGuard : std::runtime_error {
    explicit ExplosionGuard(const std::string& what) : std::runtime_error(what) {}
};

struct LPSolverFailure : std::runtime_error {
    explicit LPSolverFailure(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownFixture : std::runtime_error {
    explicit UnknownFixture(const std::string& what) : std::runtime_error(what) {}
};

/// Relation table data violates transitivity; signals a data-entry error.
struct InconsistentTable : std::runtime_error {
    explicit InconsistentTable(const std::string& what) : std::runtime_error(what) {}
};

} // namespace objspec
