#include "etube/tube.hpp"

#include <cmath>
#include <limits>

#include "etube/tangent.hpp"

namespace etube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CVec homogenize(const CVec& z) {
  CVec h(z.size() + 1);
  h.head(z.size()) = z;
  h(z.size()) = 1.0;
  return h;
}

struct SliceParams {
  double sa;
  double sb;
};

// Clip of the real line x + s y through Re z in the direction Im z.
std::optional<SliceParams> slice_params(const Tube& t, const CVec& z) {
  const auto c = clip_params(t.base(), z.real(), z.imag());
  if (!c) return std::nullopt;
  return SliceParams{c->first, c->second};
}

}  // namespace

Tube::Tube(ConvexDomain base) : base_(std::move(base)) {
  const auto r = validate(base_);
  if (!r.passed()) raise(ErrorCode::Validation, r.violations.front());
}

bool is_real_chart_point(const CVec& z) {
  const Vec x = z.real();
  return z.imag().norm() <= kRealTol * std::max(1.0, x.norm());
}

Complex SliceDisk::coordinate(const CVec& z) const { return line.coordinate(homogenize(z)); }

CVec SliceDisk::point(Complex w) const { return line_point(line, w); }

double slice_modulus_sq(const Tube& t, const CVec& z) {
  const auto s = slice_params(t, z);
  if (!s) return kInf;
  const double span = s->sb - s->sa;
  return 1.0 + 4.0 * (1.0 + s->sa * s->sb) / (span * span);
}

bool tube_contains(const Tube& t, const CVec& z) {
  if (z.size() != t.dimension()) raise(ErrorCode::InvalidArgument, "tube_contains: dimension mismatch");
  if (is_real_chart_point(z)) return contains(t.base(), Vec(z.real()));
  const auto s = slice_params(t, z);
  return s && -s->sa * s->sb > 1.0;
}

bool tube_contains(const Tube& t, const HPoint& z) {
  CVec c;
  try {
    c = t.chart().complex_coords(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infinity) return false;
    throw;
  }
  return tube_contains(t, c);
}

Membership tube_membership(const Tube& t, const CVec& z, double band) {
  if (is_real_chart_point(z)) {
    const Vec x = z.real();
    const double g = gauge(t.base(), x);
    if (std::abs(g - 1.0) < band) return Membership::Boundary;
    return contains(t.base(), x) ? Membership::Inside : Membership::Outside;
  }
  const double m = slice_modulus_sq(t, z);
  if (std::abs(m - 1.0) < band) return Membership::Boundary;
  return m < 1.0 ? Membership::Inside : Membership::Outside;
}

bool tube_contains_pairwise(const Tube& t, const CVec& z) {
  if (t.base().kind() != RepKind::HDomain) {
    raise(ErrorCode::Representation, "tube_contains_pairwise: base is not an H-domain");
  }
  const CVec h = homogenize(z);
  const auto& fs = t.base().halfspaces();
  std::vector<Complex> vals;
  vals.reserve(fs.size());
  for (const auto& f : fs) vals.push_back((complexify(f).transpose() * h)(0));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t j = i; j < vals.size(); ++j) {
      if (!((vals[i] * std::conj(vals[j])).real() > 0)) return false;
    }
  }
  return true;
}

bool tube_contains_pairwise(const Tube& t, const HPoint& z) {
  CVec c;
  try {
    c = t.chart().complex_coords(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infinity) return false;
    throw;
  }
  return tube_contains_pairwise(t, c);
}

SliceDisk slice_disk(const Tube& t, const CVec& z) {
  if (is_real_chart_point(z)) raise(ErrorCode::RealPoint, "slice_disk: point is real");
  const RealLine line = chart_line(z.real(), z.imag());
  const auto iv = line_clip(t.base(), line);
  if (!iv) raise(ErrorCode::EmptySlice, "slice_disk: trace line misses the base");
  return SliceDisk{line, *iv, Moebius::interval_to_unit(iv->a, iv->b)};
}

SliceDisk slice_disk(const Tube& t, const HPoint& z) { return slice_disk(t, t.chart().complex_coords(z)); }

double p_value(const Tube& t, const CVec& z) {
  const Vec x = z.real();
  if (!contains(t.base(), x)) raise(ErrorCode::NotInterior, "p_value: real part is not in the domain");
  if (z.imag().norm() == 0.0) return 0.0;
  const auto s = slice_params(t, z);
  if (!s) raise(ErrorCode::NotInterior, "p_value: degenerate chord");
  return 1.0 / s->sb;
}

namespace {

// (P, Q) proportional to (p + p', 1 - p p'), scaled by -sa * sb > 0.
std::pair<double, double> u_arguments(const Tube& t, const CVec& z) {
  const Vec x = z.real();
  if (!contains(t.base(), x)) raise(ErrorCode::OutsideTube, "real part is not in the domain");
  const auto s = slice_params(t, z);
  if (!s) raise(ErrorCode::OutsideTube, "degenerate chord");
  const double sigma = -s->sa;
  const double pp = 1.0 / (sigma * s->sb);
  if (pp >= 1.0 + 1e-12) raise(ErrorCode::OutsideTube, "point is outside the tube");
  return {sigma + s->sb, sigma * s->sb - 1.0};
}

}  // namespace

double u_value(const Tube& t, const CVec& z) {
  if (is_real_chart_point(z)) {
    if (!contains(t.base(), Vec(z.real()))) raise(ErrorCode::OutsideTube, "u_value: point is outside the tube");
    return 0.0;
  }
  const auto [p, q] = u_arguments(t, z);
  return std::atan2(p, q);
}

CoreDistance core_distance(const Tube& t, const CVec& z) {
  CoreDistance out;
  if (is_real_chart_point(z)) {
    out.foot = z.real();
    if (!contains(t.base(), out.foot)) raise(ErrorCode::OutsideTube, "core_distance: point is outside the tube");
    return out;
  }
  const auto [p, q] = u_arguments(t, z);
  // tan(u / 2) by the half-angle formula
  const double h = std::hypot(p, q);
  const double tau = p / (h + q);
  out.distance = std::atanh(tau);
  const SliceDisk s = slice_disk(t, z);
  const Complex w = s.to_unit_disk(s.coordinate(z));
  const GeodesicFoot g = geodesic_foot(w);
  out.via_foot = g.l;
  out.foot = line_point(s.line, s.to_unit_disk.inverse()(g.x));
  return out;
}

BoundaryClass boundary_classify(const Tube& t, const CVec& z, double band) {
  if (is_real_chart_point(z)) {
    const Vec x = z.real();
    if (std::abs(gauge(t.base(), x) - 1.0) < band) return BoundaryClass::RealBoundary;
    return contains(t.base(), x) ? BoundaryClass::Interior : BoundaryClass::Exterior;
  }
  const Vec x = z.real();
  if (contains(t.base(), x)) {
    const auto s = slice_params(t, z);
    if (s) {
      const double pp = 1.0 / (-s->sa * s->sb);
      if (std::abs(pp - 1.0) < band) return BoundaryClass::ComplexBoundary;
    }
  }
  return tube_contains(t, z) ? BoundaryClass::Interior : BoundaryClass::Exterior;
}

const char* boundary_class_name(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::Interior: return "Interior";
    case BoundaryClass::RealBoundary: return "RealBoundary";
    case BoundaryClass::ComplexBoundary: return "ComplexBoundary";
    case BoundaryClass::Exterior: return "Exterior";
  }
  return "Unknown";
}

double poincare_distance(Complex a, Complex b) {
  const double num = std::abs(a - b);
  if (num == 0.0) return 0.0;
  const double den = std::abs(1.0 - a * std::conj(b));
  const double rho = num / den;
  // artanh(rho) = log(1 + rho) - log(1 - rho^2) / 2, with 1 - rho^2 factored
  const double one_minus = (1.0 - std::norm(a)) * (1.0 - std::norm(b)) / (den * den);
  if (!(one_minus > 0)) raise(ErrorCode::OutsideTube, "poincare_distance: point outside the unit disk");
  return std::log1p(rho) - 0.5 * std::log(one_minus);
}

double slice_poincare_distance(const Tube& t, const Vec& x, const Vec& y) {
  if (!contains(t.base(), x) || !contains(t.base(), y)) {
    raise(ErrorCode::NotInterior, "slice_poincare_distance: point not in domain");
  }
  if ((x - y).norm() == 0.0) return 0.0;
  const RealLine line = chart_line(x, y - x);
  const auto iv = line_clip(t.base(), line);
  if (!iv) raise(ErrorCode::NotInterior, "slice_poincare_distance: degenerate chord");
  const Moebius m = Moebius::interval_to_unit(iv->a, iv->b);
  const Vec lx = [&] {
    Vec h(x.size() + 1);
    h.head(x.size()) = x;
    h(x.size()) = 1.0;
    return h;
  }();
  Vec ly = lx;
  ly.head(y.size()) = y;
  return poincare_distance(m(line.coordinate(lx)), m(line.coordinate(ly)));
}

double kobayashi_supported(const Tube& t, const CVec& z, const CVec& w) {
  const bool zr = is_real_chart_point(z);
  const bool wr = is_real_chart_point(w);
  if (zr && wr) return hilbert_distance(t.base(), Vec(z.real()), Vec(w.real()));
  for (const CVec* p : {&z, &w}) {
    if (!tube_contains(t, *p)) raise(ErrorCode::OutsideTube, "kobayashi_supported: point is outside the tube");
  }
  const SliceDisk s = slice_disk(t, zr ? w : z);
  const CVec& other = zr ? z : w;
  if (s.line.residual(homogenize(other)) > 1e-9) {
    raise(ErrorCode::UnsupportedConfiguration, "kobayashi_supported: points are not on one slice");
  }
  const Complex mz = s.to_unit_disk(s.coordinate(z));
  const Complex mw = s.to_unit_disk(s.coordinate(w));
  return poincare_distance(mz, mw);
}

double tube_gauge(const Tube& t, const CVec& z) {
  const CVec x0 = complexify(t.base().reference());
  const CVec dz = z - x0;
  if (dz.norm() == 0.0) return 0.0;
  if (is_real_chart_point(z)) return gauge(t.base(), Vec(z.real()));
  auto inside = [&](double lambda) { return tube_contains(t, CVec(x0 + dz / lambda)); };
  double hi = 1.0;
  double lo = 1.0;
  if (inside(1.0)) {
    lo = 0.5;
    while (inside(lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return 0.0;
    }
  } else {
    hi = 2.0;
    while (!inside(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) return kInf;
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

Tube transformed(const Tube& t, const ProjectiveMap& a) { return Tube(transformed(t.base(), a)); }

}  // namespace etube
