#pragma once

#include "etube/tube.hpp"

namespace etube {

struct GeodesicFoot {
  double x = 0;  // crossing with the real diameter
  double l = 0;  // Poincare distance from w to x
};

/// Crossing of the real diameter with the geodesic through w and conj(w).
GeodesicFoot geodesic_foot(Complex w);

/// Point of the tangent bundle: base x, unit chart direction, Finsler length.
/// A zero magnitude is the zero section and carries a zero direction.
struct TangentVector {
  Vec base;
  Vec direction;
  double magnitude = 0;

  /// direction * magnitude / finsler_norm(base, direction).
  Vec chart_vector(const ConvexDomain& d) const;
};

TangentVector to_tangent(const Tube& t, const CVec& z);
CVec from_tangent(const Tube& t, const TangentVector& v);

}  // namespace etube
