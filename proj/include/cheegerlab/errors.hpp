#pragma once

#include <stdexcept>

namespace cheegerlab {

// Input is not a valid strictly convex polygon: fewer than three distinct
// vertices after collinear merging, or nonpositive area.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonPositiveScale : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A family generator restricted to even side counts received an odd N.
class OddN : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A family generator restricted to odd side counts received an even N.
class EvenN : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Extension parameter below the starting diameter of the base polygon.
class DeltaTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResolutionTooLow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Side displacement beyond the safety radius that keeps all sides alive.
class EpsTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Perimeter/area pair infeasible for the requested side count.
class NegativeDiscriminant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Optimization target below the polygonal isoperimetric minimum.
class InfeasibleTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The Cheeger set of a polygon always touches some side; an empty contact
// set signals a solver bug rather than a property of the input.
class NoContact : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cheegerlab
