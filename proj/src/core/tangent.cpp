#include "etube/tangent.hpp"

#include <cmath>

namespace etube {

GeodesicFoot geodesic_foot(Complex w) {
  if (w.imag() == 0.0) raise(ErrorCode::RealInput, "geodesic_foot: point is real");
  if (!(std::norm(w) < 1.0)) raise(ErrorCode::InvalidArgument, "geodesic_foot: point is outside the unit disk");
  GeodesicFoot out;
  if (w.real() != 0.0) {
    // x = c - sign(c) sqrt(c^2 - 1) with c = (|w|^2 + 1) / (2 Re w), rationalized
    const double m = std::norm(w) + 1.0;
    const double re = w.real();
    out.x = 2.0 * re / (m + std::sqrt((m - 2.0 * re) * (m + 2.0 * re)));
  }
  out.l = poincare_distance(w, Complex(out.x, 0.0));
  return out;
}

Vec TangentVector::chart_vector(const ConvexDomain& d) const {
  if (magnitude == 0.0) return Vec::Zero(base.size());
  return direction * (magnitude / finsler_norm(d, base, direction));
}

TangentVector to_tangent(const Tube& t, const CVec& z) {
  TangentVector out;
  if (is_real_chart_point(z)) {
    out.base = z.real();
    if (!contains(t.base(), out.base)) raise(ErrorCode::OutsideTube, "to_tangent: point is outside the tube");
    out.direction = Vec::Zero(out.base.size());
    return out;
  }
  if (!tube_contains(t, z)) raise(ErrorCode::OutsideTube, "to_tangent: point is outside the tube");
  const SliceDisk s = slice_disk(t, z);
  const Complex w = s.to_unit_disk(s.coordinate(z));
  const GeodesicFoot g = geodesic_foot(w);
  out.base = line_point(s.line, s.to_unit_disk.inverse()(g.x));
  out.direction = Vec(z.imag()).normalized();
  out.magnitude = g.l;
  return out;
}

CVec from_tangent(const Tube& t, const TangentVector& v) {
  if (!contains(t.base(), v.base)) raise(ErrorCode::NotInterior, "from_tangent: base is not in the domain");
  if (v.magnitude == 0.0) return complexify(v.base);
  if (!(v.direction.norm() > 0)) raise(ErrorCode::ZeroDirection, "from_tangent: zero direction");
  const RealLine line = chart_line(v.base, v.direction);
  const auto iv = line_clip(t.base(), line);
  if (!iv) raise(ErrorCode::NotInterior, "from_tangent: degenerate chord");
  const Moebius m = Moebius::interval_to_unit(iv->a, iv->b);
  const Vec base_lift = [&] {
    Vec h(v.base.size() + 1);
    h.head(v.base.size()) = v.base;
    h(v.base.size()) = 1.0;
    return h;
  }();
  const double x0 = m(line.coordinate(base_lift));
  const double sign = v.direction.dot(line_direction(line)) >= 0 ? 1.0 : -1.0;
  const Complex w0(0.0, sign * std::tanh(v.magnitude));
  const Complex w = Moebius::disk_shift(x0).inverse()(w0);
  return line_point(line, m.inverse()(w));
}

}  // namespace etube
