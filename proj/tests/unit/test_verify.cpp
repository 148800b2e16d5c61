#include <doctest.h>

#include <cmath>

#include "etube/verify.hpp"
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

bool has_note(const VerifierReport& r, const std::string& prefix) {
  for (const auto& n : r.notes) {
    if (n.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

bool any_violation_contains(const VerifierReport& r, const std::string& what) {
  for (const auto& v : r.violations) {
    if (v.find(what) != std::string::npos) return true;
  }
  return false;
}

ProjectiveMap diag3(double a, double b, double c) {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return ProjectiveMap(m);
}

}  // namespace

TEST_CASE("samplers stay in their sets") {
  for (const auto& d : {square_v(), simplex_h(), ellipse(), interval()}) {
    const Tube t(d);
    for (std::uint64_t k = 0; k < 500; ++k) {
      Stream rng(3, k);
      CHECK(contains(d, sample_domain_point(d, rng)));
      CHECK(tube_contains(t, sample_tube_point(t, rng)));
    }
  }
}

TEST_CASE("boundary band") {
  const Tube t(interval());
  CHECK(in_boundary_band(t, c1(Complex(1.0 + 1e-8, 0))));
  CHECK(in_boundary_band(t, c1(Complex(0, 1.0 - 1e-8))));
  CHECK_FALSE(in_boundary_band(t, c1(Complex(0, 0.5))));
  CHECK_FALSE(in_boundary_band(t, c1(Complex(2, 0))));
}

TEST_CASE("linear convexity") {
  SUBCASE("square passes") {
    const auto r = verify_linear_convexity(Tube(square_h()), {200, 200, 1, false});
    CHECK(r.passed());
    CHECK(r.samples_run == 200);
    CHECK(r.max_error < 1e-10);
    CHECK(has_note(r, "harness: interior point raised InsideTube"));
  }
  SUBCASE("V-polytope and simplex pass") {
    CHECK(verify_linear_convexity(Tube(square_v()), {100, 100, 2, false}).passed());
    CHECK(verify_linear_convexity(Tube(simplex_v()), {100, 100, 2, false}).passed());
  }
  SUBCASE("interval separator at 2") {
    const Tube t(interval());
    const Functional xi = tube_separator(t, c1(2.0));
    CHECK(std::abs(evaluate(t, xi, c1(2.0))) < 1e-14);
    CHECK(std::abs(evaluate(t, xi, c1(0.5 + 0.5 * I))) > 0.1);
    CHECK(verify_linear_convexity(t, {200, 100, 4, false}).passed());
  }
  SUBCASE("flipped separator fails") {
    const auto r = verify_linear_convexity(Tube(square_h()), {50, 10, 1, true});
    CHECK_FALSE(r.passed());
    CHECK(any_violation_contains(r, "xi(z)"));
  }
  SUBCASE("ellipse has no functional family") {
    CHECK_THROWS_AS(verify_linear_convexity(Tube(ellipse()), {}), Error);
  }
}

TEST_CASE("raster topology") {
  const Tube t(interval());
  SUBCASE("unit disk") {
    const SliceRaster r = rasterize_slice(t, c1(0.0), c1(1.0), 128);
    CHECK_FALSE(r.touches_frame());
    const auto topo = raster_topology(r);
    CHECK(topo.region_components == 1);
    CHECK(topo.complement_components == 1);
    // cell area approximates pi
    std::size_t count = 0;
    for (auto c : r.inside) count += c;
    CHECK(std::abs(count * r.cell * r.cell - M_PI) < 0.05);
  }
  SUBCASE("annulus") {
    const MembershipFn annulus = [&](const CVec& z) { return tube_contains(t, z) && std::abs(z(0)) > 0.3; };
    const auto topo = raster_topology(rasterize_slice(t, c1(0.5), c1(1.0), 128, annulus));
    CHECK(topo.region_components == 1);
    CHECK(topo.complement_components == 2);
  }
  SUBCASE("two disks") {
    const MembershipFn two = [&](const CVec& z) { return std::abs(z(0) - 0.5) < 0.3 || std::abs(z(0) + 0.5) < 0.3; };
    const auto topo = raster_topology(rasterize_slice(t, c1(0.0), c1(1.0), 128, two));
    CHECK(topo.region_components == 2);
    CHECK(topo.complement_components == 1);
  }
  SUBCASE("checkerboard block") {
    SliceRaster r;
    r.resolution = 4;
    r.inside.assign(16, 0);
    r.inside[1 * 4 + 1] = 1;
    r.inside[2 * 4 + 2] = 1;
    CHECK(raster_topology(r).region_components == 2);
    CHECK(raster_topology(r).complement_components == 1);
    r.saddle.assign(9, 0);
    r.saddle[1 * 3 + 1] = 1;
    CHECK(raster_topology(r).region_components == 1);
    CHECK(raster_topology(r).complement_components == 1);
    r.saddle[1 * 3 + 1] = -1;
    CHECK(raster_topology(r).region_components == 2);
    CHECK(raster_topology(r).complement_components == 1);
  }
  SUBCASE("saddle samples from the membership") {
    const SliceRaster r = rasterize_slice(t, c1(0.0), c1(1.0), 64);
    std::size_t blocks = 0;
    for (int i = 0; i + 1 < r.resolution; ++i) {
      for (int j = 0; j + 1 < r.resolution; ++j) {
        const int s = r.saddle[static_cast<std::size_t>(i) * (r.resolution - 1) + j];
        const bool checker = r.at(i, j) == r.at(i + 1, j + 1) && r.at(i, j + 1) == r.at(i + 1, j) &&
                             r.at(i, j) != r.at(i, j + 1);
        CHECK((s != 0) == checker);
        blocks += checker ? 1 : 0;
      }
    }
    CHECK(r.saddle.size() == 63u * 63u);
    CHECK(blocks < 63u * 63u);
  }
  SUBCASE("region reaching the frame") {
    const MembershipFn everything = [](const CVec&) { return true; };
    CHECK_THROWS_AS(rasterize_slice(t, c1(0.0), c1(1.0), 32, everything), Error);
  }
}

TEST_CASE("C-convexity") {
  SUBCASE("triangle tube") {
    const auto r = verify_c_convexity(Tube(simplex_v()), {20, 128, 7, {}});
    CHECK(r.passed());
    CHECK(r.samples_run + r.skipped == 20);
  }
  SUBCASE("complexified real line through the square") {
    const Tube t(square_v());
    const auto r = rasterize_slice(t, c2(-0.2, 0.1), c2(1.0, 0.3), 128);
    const auto topo = raster_topology(r);
    CHECK(topo.region_components == 1);
    CHECK(topo.complement_components == 1);
  }
  SUBCASE("punctured disk control") {
    const Tube t(interval());
    CConvexityOptions opt{10, 128, 1, {}};
    opt.member = [&](const CVec& z) { return tube_contains(t, z) && std::abs(z(0)) > 0.3; };
    const auto r = verify_c_convexity(t, opt);
    CHECK_FALSE(r.passed());
    CHECK(any_violation_contains(r, "complement disconnected"));
  }
  SUBCASE("deterministic") {
    const CConvexityOptions opt{5, 64, 11, {}};
    CHECK(to_text(verify_c_convexity(Tube(square_h()), opt)) == to_text(verify_c_convexity(Tube(square_h()), opt)));
  }
}

TEST_CASE("duality identity") {
  for (const auto& d : {simplex_v(), square_v(), square_h(), interval()}) {
    const auto r = verify_duality_identity(d, 300, 5);
    CHECK_MESSAGE(r.passed(), d.name());
    CHECK(r.samples_run + r.skipped >= 600);
  }
  CHECK_THROWS_AS(verify_duality_identity(ellipse(), 10, 0), Error);
}

TEST_CASE("metric consistency") {
  const Tube sq(square_v());
  CHECK(std::abs(slice_poincare_distance(sq, v2(0, 0), v2(0.5, 0)) - 0.5 * std::log(3.0)) < 1e-12);
  CHECK(slice_poincare_distance(sq, v2(0.2, 0.1), v2(0.2, 0.1)) == 0.0);
  for (const auto& d : {square_v(), simplex_h(), ellipse(), interval()}) {
    const auto r = verify_metric_consistency(d, 300, 9);
    CHECK_MESSAGE(r.passed(), d.name());
    CHECK(r.max_error < 1e-10);
  }
}

TEST_CASE("homeomorphism") {
  const Tube t(simplex_v());
  SUBCASE("diagonal group") {
    const auto r = verify_homeomorphism(t, 300, {diag3(2, 1, 1), diag3(1, 3, 0.5)}, 2);
    CHECK(r.passed());
    CHECK(r.samples_run > 250);
  }
  SUBCASE("identity") {
    const auto r = verify_homeomorphism(t, 100, {ProjectiveMap::identity(3)}, 2);
    CHECK(r.passed());
  }
  SUBCASE("ellipse without group") { CHECK(verify_homeomorphism(Tube(ellipse()), 200, {}, 4).passed()); }
  SUBCASE("element not preserving the domain") {
    Mat m(3, 3);
    m << 1, 2, 0, 0.5, 1, 3, 1, 1, 1;
    try {
      verify_homeomorphism(t, 10, {ProjectiveMap(m)}, 0);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GroupValidation);
    }
  }
}

TEST_CASE("exhaustion") {
  const std::vector<double> deltas{0.5, 0.25, 0.1, 0.01};
  SUBCASE("square") {
    const auto r = verify_exhaustion_monotone(square_v(), deltas, 500, 3);
    CHECK(r.passed());
    CHECK(has_note(r, "max absorption index"));
  }
  SUBCASE("indices") {
    const Tube t(interval());
    CHECK(absorption_index(t, deltas, c1(0.0)) == 0);
    CHECK(absorption_index(t, deltas, c1(2.0)) == -1);
    // core distance 4 on the unit disk: inside (1 - delta) D^e iff tanh 4 < 1 - delta
    const double y = std::tanh(4.0);
    int expected = 0;
    double delta = deltas[0];
    while (!(y < 1.0 - delta)) {
      ++expected;
      delta = expected < 4 ? deltas[expected] : delta * 0.5;
    }
    CHECK(std::abs(core_distance(t, c1(y * I)).distance - 4.0) < 1e-9);
    CHECK(absorption_index(t, deltas, c1(y * I)) == expected);
    CHECK(expected == 7);
  }
  SUBCASE("bad deltas") {
    CHECK_THROWS_AS(verify_exhaustion_monotone(square_v(), {0.1, 0.2}, 1, 0), Error);
    CHECK_THROWS_AS(verify_exhaustion_monotone(square_v(), {1.5}, 1, 0), Error);
  }
}
