#pragma once

#include <stdexcept>
#include <string>

namespace hardyq {

// Argument outside a documented domain (bad angle range, z out of series
// domain, evaluation at a singular point, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An iteration failed to reach its tolerance within its budget.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Input polygon unusable: repeated/collinear vertices, self intersection,
// or a bisector curve that never closes against the far boundary.
struct DegenerateInput : std::invalid_argument {
    explicit DegenerateInput(const std::string& what) : std::invalid_argument(what) {}
};

// More than one reflex vertex. A simple quadrilateral cannot have two, so
// this indicates a bug in the caller's geometry pipeline.
struct MultipleReflex : std::logic_error {
    explicit MultipleReflex(const std::string& what) : std::logic_error(what) {}
};

// A junction angle sits too close to a type boundary to classify reliably.
struct ClassificationAmbiguous : std::runtime_error {
    explicit ClassificationAmbiguous(const std::string& what) : std::runtime_error(what) {}
};

// Grid step too large: not enough interior nodes for a meaningful estimate.
struct MeshTooCoarse : std::runtime_error {
    explicit MeshTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

// Parabola normal requested at the direction where the curve escapes to
// infinity (denominator of the closed form vanishes).
struct DegenerateNormal : DomainError {
    explicit DegenerateNormal(const std::string& what) : DomainError(what) {}
};

} // namespace hardyq
