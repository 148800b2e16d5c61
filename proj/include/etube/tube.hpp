#pragma once

#include "etube/domain.hpp"

namespace etube {

/// Real Moebius transformation w -> (a w + b) / (c w + d).
struct Moebius {
  double a = 1, b = 0, c = 0, d = 1;

  Complex operator()(Complex w) const { return (a * w + b) / (c * w + d); }
  double operator()(double t) const { return (a * t + b) / (c * t + d); }
  Moebius inverse() const { return Moebius{d, -b, -c, a}; }
  Moebius operator*(const Moebius& o) const {
    return Moebius{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  /// Affine map sending (lo, hi) onto (-1, 1).
  static Moebius interval_to_unit(double lo, double hi) { return Moebius{2.0, -(lo + hi), 0.0, hi - lo}; }
  /// Disk automorphism fixing the real diameter and sending x to 0.
  static Moebius disk_shift(double x) { return Moebius{1.0, -x, -x, 1.0}; }
};

/// Elliptic tube over a properly convex domain, in the domain's chart.
class Tube {
 public:
  explicit Tube(ConvexDomain base);

  const ConvexDomain& base() const { return base_; }
  const Chart& chart() const { return base_.chart(); }
  int dimension() const { return base_.dimension(); }

 private:
  ConvexDomain base_;
};

/// L^C ∩ D^e for the real trace line L of a non-real point.
struct SliceDisk {
  RealLine line;
  Interval interval;
  Moebius to_unit_disk;

  /// Line coordinate of a chart point on L^C.
  Complex coordinate(const CVec& z) const;
  /// Chart point of a line coordinate.
  CVec point(Complex w) const;
};

enum class Membership { Inside, Outside, Boundary };
enum class BoundaryClass { Interior, RealBoundary, ComplexBoundary, Exterior };

/// Chart points with |Im z| <= kRealTol * max(1, |Re z|) are treated as real.
inline constexpr double kRealTol = 1e-13;
bool is_real_chart_point(const CVec& z);

/// Membership through the slice disk of the trace line.
bool tube_contains(const Tube& t, const CVec& z);
bool tube_contains(const Tube& t, const HPoint& z);
/// Membership with a boundary band on the squared slice modulus (or on the
/// gauge for real points).
Membership tube_membership(const Tube& t, const CVec& z, double band = 1e-8);
/// Squared modulus of the normalized slice coordinate; < 1 inside. Infinite
/// when the trace line misses the base.
double slice_modulus_sq(const Tube& t, const CVec& z);

/// Membership through Re(f(z) conj g(z)) > 0 over all pairs of the family.
bool tube_contains_pairwise(const Tube& t, const CVec& z);
bool tube_contains_pairwise(const Tube& t, const HPoint& z);

SliceDisk slice_disk(const Tube& t, const CVec& z);
SliceDisk slice_disk(const Tube& t, const HPoint& z);

double p_value(const Tube& t, const CVec& z);
double u_value(const Tube& t, const CVec& z);

struct CoreDistance {
  double distance = 0;  // artanh(tan(u / 2))
  double via_foot = 0;  // Poincare distance from z to the foot in its slice
  Vec foot;
};
CoreDistance core_distance(const Tube& t, const CVec& z);

BoundaryClass boundary_classify(const Tube& t, const CVec& z, double band = 1e-8);
const char* boundary_class_name(BoundaryClass c);

/// Poincare distance on the unit disk, k = artanh |a - b| / |1 - a conj(b)|.
double poincare_distance(Complex a, Complex b);

/// Poincare distance of two real points in the slice disk of their line.
double slice_poincare_distance(const Tube& t, const Vec& x, const Vec& y);

/// Kobayashi distance for pairs of real points or pairs on one slice.
double kobayashi_supported(const Tube& t, const CVec& z, const CVec& w);

/// inf{lambda > 0 : x0 + (z - x0) / lambda in D^e}; < 1 exactly inside.
double tube_gauge(const Tube& t, const CVec& z);

Tube transformed(const Tube& t, const ProjectiveMap& a);

}  // namespace etube
