#include <doctest.h>

#include <cmath>

#include "etube/rng.hpp"
#include "etube/tangent.hpp"
#include "etube/tube.hpp"
#include "fixtures.hpp"

using namespace etube;
using namespace fixtures;

namespace {

const Complex I(0, 1);

CVec c1(Complex a) {
  CVec v(1);
  v << a;
  return v;
}
CVec c2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return v;
}

Vec sample_inside(const ConvexDomain& d, Stream& rng) {
  const Box b = bounding_box(d);
  while (true) {
    Vec x(d.dimension());
    for (int i = 0; i < x.size(); ++i) x(i) = rng.uniform(b.lo(i), b.hi(i));
    if (contains(d, x)) return x;
  }
}

// Tube point x + i y with y scaled below the slice radius.
CVec sample_tube(const Tube& t, Stream& rng) {
  const Vec x = sample_inside(t.base(), rng);
  Vec y(x.size());
  for (int i = 0; i < y.size(); ++i) y(i) = rng.normal();
  const auto c = clip_params(t.base(), x, y);
  const double lambda = std::sqrt(-c->first * c->second) * std::sqrt(rng.uniform());
  CVec z(x.size());
  for (int i = 0; i < x.size(); ++i) z(i) = Complex(x(i), lambda * y(i));
  return z;
}

// Exit parameter of the real ray x + s y by bisection on membership.
double exit_oracle(const ConvexDomain& d, const Vec& p, const Vec& dir) {
  double lo = 0, hi = 1;
  while (contains(d, Vec(p + hi * dir))) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (contains(d, Vec(p + mid * dir)) ? lo : hi) = mid;
  }
  return lo;
}

// Nearest point of the real diameter to w in the Poincare metric, by golden
// section search.
double foot_oracle(Complex w) {
  double a = -1 + 1e-15, b = 1 - 1e-15;
  const double g = (std::sqrt(5.0) - 1) / 2;
  auto f = [&](double x) { return poincare_distance(w, Complex(x, 0)); };
  for (int i = 0; i < 200; ++i) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    (f(c) < f(d) ? b : a) = (f(c) < f(d) ? d : c);
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("interval tube is the unit disk") {
  const Tube t(interval());
  CHECK(tube_contains(t, c1(0.5 * I)));
  CHECK_FALSE(tube_contains(t, c1(2.0 * I)));
  CHECK(tube_contains(t, c1(0.3)));
  Stream rng(20, 0);
  int disagreements = 0, counted = 0;
  for (int k = 0; k < 10000; ++k) {
    const Complex z(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (std::abs(std::norm(z) - 1.0) < 1e-8) continue;
    ++counted;
    if (tube_contains(t, c1(z)) != (std::abs(z) < 1.0)) ++disagreements;
  }
  CHECK(disagreements == 0);
  CHECK(counted > 9900);
}

TEST_CASE("square slice example") {
  const Tube t(square_v());
  const CVec z = c2(Complex(0.3, 0.4), 0.1);
  CHECK(tube_contains(t, z));
  const SliceDisk s = slice_disk(t, z);
  CHECK(s.interval.a == doctest::Approx(-1.0));
  CHECK(s.interval.b == doctest::Approx(1.0));
  CHECK(std::abs(s.coordinate(z) - Complex(0.3, 0.4)) < 1e-14);
  CHECK(std::abs(s.to_unit_disk(Complex(0.3, 0.4)) - Complex(0.3, 0.4)) < 1e-15);
  CHECK_THROWS_AS(slice_disk(t, c2(0.3, 0.1)), Error);
  CHECK_THROWS_AS(slice_disk(t, c2(Complex(0.3, 0.4), Complex(3, 0))), Error);
}

TEST_CASE("slice normalization") {
  const Tube t(ConvexDomain::interval(-2, 2));
  const SliceDisk s = slice_disk(t, c1(I));
  CHECK(std::abs(s.to_unit_disk(s.coordinate(c1(I))) - 0.5 * I) < 1e-15);
  for (Complex w : {Complex(0.3, 0.7), Complex(-1.1, -0.2)}) {
    CHECK(std::abs(s.to_unit_disk(std::conj(w)) - std::conj(s.to_unit_disk(w))) < 1e-15);
  }
}

TEST_CASE("pairwise membership") {
  const Tube t(interval());
  CHECK(tube_contains_pairwise(t, c1(0.5 * I)));
  CHECK_FALSE(tube_contains_pairwise(t, c1(2.0 * I)));
  CHECK_THROWS_AS(tube_contains_pairwise(Tube(ellipse()), c2(0, 0)), Error);

  Stream rng(21, 0);
  for (const auto& d : {interval(), square_h(), simplex_h()}) {
    const Tube tt(d);
    const Box b = bounding_box(d);
    int disagreements = 0, skipped = 0;
    for (int k = 0; k < 10000; ++k) {
      CVec z(d.dimension());
      for (int i = 0; i < z.size(); ++i) {
        const double w = b.hi(i) - b.lo(i);
        z(i) = Complex(rng.uniform(b.lo(i) - 0.5 * w, b.hi(i) + 0.5 * w), rng.uniform(-w, w));
      }
      if (tube_membership(tt, z) == Membership::Boundary) {
        ++skipped;
        continue;
      }
      if (tube_contains(tt, z) != tube_contains_pairwise(tt, z)) ++disagreements;
    }
    CHECK(disagreements == 0);
    CHECK(skipped < 10);
  }
}

TEST_CASE("p and u values") {
  const Tube t(interval());
  CHECK(p_value(t, c1(0.5 * I)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p_value(t, c1(0.3)) == 0.0);
  CHECK(p_value(t, c1(Complex(0.5, -0.25))) == doctest::Approx(0.25 / 1.5).epsilon(1e-15));
  CHECK_THROWS_AS(p_value(t, c1(Complex(1.5, 0.1))), Error);

  CHECK(u_value(t, c1(0.5 * I)) == doctest::Approx(std::atan(4.0 / 3.0)).epsilon(1e-15));
  CHECK(u_value(t, c1(0.2)) == 0.0);
  CHECK(std::abs(u_value(t, c1(0.99 * I)) - 1.5607461601) < 1e-10);
  CHECK(u_value(t, c1(0.99 * I)) == doctest::Approx(2 * std::atan(0.99)).epsilon(1e-14));
  CHECK_THROWS_AS(u_value(t, c1(2.0 * I)), Error);

  // ray-exit oracle for p
  Stream rng(22, 0);
  for (const auto& d : {square_v(), simplex_h(), ellipse()}) {
    const Tube tt(d);
    for (int k = 0; k < 200; ++k) {
      const CVec z = sample_tube(tt, rng);
      const Vec x = z.real(), y = z.imag();
      CHECK(p_value(tt, z) == doctest::Approx(1.0 / exit_oracle(d, x, y)).epsilon(1e-9));
    }
  }
}

TEST_CASE("disk formula for u") {
  const Tube t(interval());
  Stream rng(23, 0);
  double worst = 0;
  for (int k = 0; k < 10000; ++k) {
    const double r = std::sqrt(rng.uniform()), th = rng.uniform(0, 2 * M_PI);
    const Complex z = std::polar(r, th);
    if (std::abs(z.imag()) < 1e-12) continue;
    const double expect = std::atan2(2 * std::abs(z.imag()), 1 - std::norm(z));
    worst = std::max(worst, std::abs(u_value(t, c1(z)) - expect));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("core distance") {
  const Tube t(interval());
  const auto c = core_distance(t, c1(0.5 * I));
  CHECK(c.distance == doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
  CHECK(c.via_foot == doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
  CHECK(std::abs(c.foot(0)) < 1e-15);
  const auto r = core_distance(t, c1(0.3));
  CHECK(r.distance == 0.0);
  CHECK(r.foot(0) == 0.3);
  CHECK(core_distance(t, c1(0.99 * I)).distance == doctest::Approx(2.6466524123622457).epsilon(1e-13));
  CHECK_THROWS_AS(core_distance(t, c1(1.2 * I)), Error);

  Stream rng(24, 0);
  for (const auto& d : {square_v(), simplex_v(), ellipse()}) {
    const Tube tt(d);
    double worst_phi = 0, worst_routes = 0;
    for (int k = 0; k < 10000; ++k) {
      const CVec z = sample_tube(tt, rng);
      const auto cd = core_distance(tt, z);
      worst_phi = std::max(worst_phi, std::abs(u_value(tt, z) - 2 * std::atan(std::tanh(cd.distance))));
      worst_routes = std::max(worst_routes, std::abs(cd.distance - cd.via_foot));
    }
    CHECK(worst_phi < 1e-9);
    CHECK(worst_routes < 1e-9);
  }
}

TEST_CASE("boundary classification") {
  const Tube t(interval());
  CHECK(boundary_classify(t, c1(I)) == BoundaryClass::ComplexBoundary);
  CHECK(boundary_classify(t, c1(1.0)) == BoundaryClass::RealBoundary);
  CHECK(boundary_classify(t, c1(0.5 * I)) == BoundaryClass::Interior);
  CHECK(boundary_classify(t, c1(2.0 * I)) == BoundaryClass::Exterior);
  CHECK(boundary_classify(t, c1(3.0)) == BoundaryClass::Exterior);
}

TEST_CASE("supported Kobayashi distance") {
  const Tube t(square_v());
  CHECK(kobayashi_supported(t, c2(0, 0), c2(0.5, 0)) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
  const double k = kobayashi_supported(t, c2(0.3 * I, 0.1), c2(0.5 * I, 0.1));
  CHECK(k == doctest::Approx(std::atanh(0.2 / 0.85)).epsilon(1e-14));
  CHECK(std::abs(k - 0.2397865401) < 1e-10);
  // real point on the same slice
  CHECK(kobayashi_supported(t, c2(0.2, 0.1), c2(0.5 * I, 0.1)) == doctest::Approx(poincare_distance(0.2, 0.5 * I)));
  CHECK_THROWS_AS(kobayashi_supported(t, c2(0.3 * I, 0.1), c2(0.5 * I, 0.2)), Error);
  try {
    kobayashi_supported(t, c2(0.3 * I, 0.1), c2(0.5 * I, 0.2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedConfiguration);
  }
  CHECK(poincare_distance(0.3 * I, 0.3 * I) == 0.0);
  CHECK(poincare_distance(0.0, 0.5) == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
}

TEST_CASE("projective invariance of membership") {
  Stream rng(25, 0);
  for (const auto& d : {square_v(), ellipse()}) {
    const Tube t(d);
    int checked = 0;
    for (int k = 0; k < 1000; ++k) {
      Mat m = Mat::Identity(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) += 0.2 * rng.normal();
      const ProjectiveMap a(m);
      std::optional<Tube> img;
      try {
        img.emplace(transformed(t, a));
      } catch (const Error&) {
        continue;
      }
      CVec z(2);
      for (int i = 0; i < 2; ++i) z(i) = Complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
      CVec az;
      try {
        az = apply_in_chart(a, d.chart(), z);
      } catch (const Error&) {
        continue;
      }
      if (tube_membership(t, z) == Membership::Boundary) continue;
      ++checked;
      CHECK(tube_contains(*img, az) == tube_contains(t, z));
    }
    CHECK(checked > 500);
  }
}

TEST_CASE("tube gauge") {
  const Tube t(interval());
  CHECK(tube_gauge(t, c1(0.5 * I)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tube_gauge(t, c1(2.0 * I)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tube_gauge(t, c1(0.0)) == 0.0);
  Stream rng(26, 0);
  const Tube sq(square_v());
  for (int k = 0; k < 500; ++k) {
    CVec z(2);
    for (int i = 0; i < 2; ++i) z(i) = Complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    const double g = tube_gauge(sq, z);
    if (std::abs(g - 1) < 1e-9) continue;
    CHECK((g < 1) == tube_contains(sq, z));
  }
}

TEST_CASE("geodesic foot") {
  const auto g0 = geodesic_foot(0.5 * I);
  CHECK(g0.x == 0.0);
  CHECK(g0.l == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  const Complex w(0.6, 0.3);
  const auto g1 = geodesic_foot(w);
  CHECK(g1.x == doctest::Approx(foot_oracle(w)).epsilon(1e-7));
  CHECK(g1.x == doctest::Approx(0.530049).epsilon(1e-6));
  CHECK(g1.l == doctest::Approx(0.5 * poincare_distance(w, std::conj(w))).epsilon(1e-13));
  // the circle through w with center c is orthogonal to the unit circle
  const double c = (std::norm(w) + 1) / (2 * w.real());
  CHECK(std::abs(std::abs(w - c) - std::sqrt(c * c - 1)) < 1e-14);
  CHECK(std::abs(c - g1.x) == doctest::Approx(std::sqrt(c * c - 1)).epsilon(1e-13));
  const auto g2 = geodesic_foot(Complex(0.4, 1e-9));
  CHECK(g2.l < 1e-8);
  CHECK(std::abs(g2.x - 0.4) < 1e-8);
  CHECK_THROWS_AS(geodesic_foot(0.4), Error);

  Stream rng(27, 0);
  for (int k = 0; k < 200; ++k) {
    const Complex z = std::polar(std::sqrt(rng.uniform()) * 0.95, rng.uniform(0, 2 * M_PI));
    if (std::abs(z.imag()) < 1e-3) continue;
    const auto g = geodesic_foot(z);
    CHECK(g.x == doctest::Approx(foot_oracle(z)).epsilon(1e-6));
    CHECK(g.l == doctest::Approx(0.5 * poincare_distance(z, std::conj(z))).epsilon(1e-10));
  }
}

TEST_CASE("tangent map") {
  const Tube t(interval());
  const auto v = to_tangent(t, c1(0.5 * I));
  CHECK(std::abs(v.base(0)) < 1e-15);
  CHECK(v.direction(0) == 1.0);
  CHECK(v.magnitude == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  const auto vc = to_tangent(t, c1(-0.5 * I));
  CHECK(vc.direction(0) == -1.0);
  CHECK(std::abs(from_tangent(t, v)(0) - 0.5 * I) < 1e-15);

  const Tube sq(square_v());
  const auto zero = to_tangent(sq, c2(0.3, 0.1));
  CHECK(zero.magnitude == 0.0);
  CHECK((zero.base - v2(0.3, 0.1)).norm() == 0.0);
  CHECK((from_tangent(sq, zero) - c2(0.3, 0.1)).norm() == 0.0);
  TangentVector bad{v2(0, 0), v2(0, 0), 1.0};
  CHECK_THROWS_AS(from_tangent(sq, bad), Error);
  TangentVector outside{v2(2, 0), v2(1, 0), 1.0};
  CHECK_THROWS_AS(from_tangent(sq, outside), Error);

  Stream rng(28, 0);
  for (const auto& d : {square_v(), simplex_h(), ellipse()}) {
    const Tube tt(d);
    for (int k = 0; k < 1000; ++k) {
      const CVec z = sample_tube(tt, rng);
      const auto f = to_tangent(tt, z);
      CHECK((from_tangent(tt, f) - z).norm() < 1e-8);
      const auto fc = to_tangent(tt, CVec(z.conjugate()));
      CHECK((fc.base - f.base).norm() < 1e-10);
      CHECK((fc.direction + f.direction).norm() < 1e-10);
      CHECK(std::abs(fc.magnitude - f.magnitude) < 1e-10);
      const auto cd = core_distance(tt, z);
      CHECK((cd.foot - f.base).norm() < 1e-9);
      CHECK(std::abs(cd.distance - f.magnitude) < 1e-9);
    }
  }
}
