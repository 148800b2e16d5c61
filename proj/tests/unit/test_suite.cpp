#include <doctest.h>

#include <cmath>

#include "etube/suite.hpp"
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

DomainSpec spec_of(ConvexDomain d, std::vector<ProjectiveMap> gens = {}) {
  return DomainSpec{std::move(d), std::move(gens), std::nullopt};
}

std::vector<std::string> names(const std::vector<VerifierReport>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.name);
  return out;
}

SuiteOptions quick() {
  SuiteOptions o;
  o.samples = 60;
  o.lines = 4;
  o.grid = 64;
  o.seed = 3;
  return o;
}

}  // namespace

TEST_CASE("slice grid on the interval tube matches the unit disk") {
  const Tube t(interval());
  const double band = 1e-3;
  const SliceGrid g = slice_grid(t, c1(0.5 * I), c1(1.0), 96, band);
  REQUIRE(g.values.size() == 96u * 96u);
  const int mid = 48;
  CHECK(std::abs(g.values[mid * 96 + mid] - std::atan(4.0 / 3.0)) < 1e-12);
  std::size_t inside = 0, outside = 0;
  for (int i = 0; i < 96; ++i) {
    for (int j = 0; j < 96; ++j) {
      const Complex z = 0.5 * I + Complex((j - mid) * g.cell, (mid - i) * g.cell);
      const double m = std::norm(z);
      const double v = g.values[static_cast<std::size_t>(i) * 96 + j];
      if (m < 1.0 - 2 * band) {
        // sinh of the distance to the real diameter in the curvature -1 disk
        const double s = 2.0 * std::abs(z.imag()) / (1.0 - m);
        CHECK(std::abs(v - 2.0 * std::atan(s / (1.0 + std::sqrt(1.0 + s * s)))) < 1e-9);
        ++inside;
      } else if (m > 1.0 + 2 * band) {
        CHECK(v == -1.0);
        ++outside;
      } else if (std::abs(m - 1.0) < 0.5 * band) {
        CHECK(v == -2.0);
      }
    }
  }
  CHECK(inside > 1000);
  CHECK(outside > 1000);
}

TEST_CASE("slice grid through a point") {
  const Tube t(interval());
  const SliceGrid g = slice_grid(t, c1(0.5 * I), 64);
  CHECK(std::abs(g.values[32 * 64 + 32] - 0.927295218001612) < 1e-12);
  CHECK_THROWS_AS(slice_grid(t, c1(0.3), 64), Error);
  CHECK_THROWS_AS(slice_grid(t, c1(0.5 * I), 1), Error);
}

TEST_CASE("encoders") {
  SliceGrid g;
  g.resolution = 2;
  g.values = {0.0, -1.0, -2.0, 0.25 * M_PI};
  CHECK(encode_csv(g) == "0,-1\n-2,0.785398163397448\n");
  const std::string pgm = encode_pgm(g);
  CHECK(pgm.substr(0, 11) == "P5\n2 2\n255\n");
  REQUIRE(pgm.size() == 15u);
  CHECK(static_cast<unsigned char>(pgm[11]) == 0);
  CHECK(static_cast<unsigned char>(pgm[12]) == 255);
  CHECK(static_cast<unsigned char>(pgm[13]) == 255);
  CHECK(static_cast<unsigned char>(pgm[14]) == 127);
  g.values = {1.5707963267948966, 1.57, 0.0, 0.0};
  CHECK(static_cast<unsigned char>(encode_pgm(g)[11]) == 254);
  CHECK(static_cast<unsigned char>(encode_pgm(g)[12]) == 254);
}

TEST_CASE("tangent text") {
  TangentVector v;
  v.base = v2(0.25, -0.5);
  v.direction = v2(0.6, -0.8);
  v.magnitude = 1.5;
  const std::string s = format_tangent(v);
  CHECK(s == "0.25,-0.5;+0.6,-0.8;1.5");
  const TangentVector back = parse_tangent(s, 2);
  CHECK((back.base - v.base).norm() == 0.0);
  CHECK((back.direction - v.direction).norm() < 1e-15);
  CHECK(back.magnitude == 1.5);
  CHECK(parse_tangent("0;+3;2", 1).direction(0) == 1.0);
  CHECK_THROWS_AS(parse_tangent("0;+1", 1), Error);
  CHECK_THROWS_AS(parse_tangent("0;0;1", 1), Error);
  CHECK_THROWS_AS(parse_tangent("0;1;-1", 1), Error);
  CHECK_THROWS_AS(parse_tangent("0,0;1;1", 1), Error);
  CVec z(2);
  z << Complex(1, -2), Complex(0, 0.5);
  CHECK(format_complex_vector(z) == "1-2i,0+0.5i");
}

TEST_CASE("suite dispatch") {
  SUBCASE("all on a polytope") {
    const auto rs = run_suite(spec_of(square_v()), "all", quick());
    CHECK(names(rs) == std::vector<std::string>{"linear_convexity", "c_convexity", "duality_identity",
                                                "metric_consistency", "homeomorphism", "exhaustion_monotone"});
    for (const auto& r : rs) {
      CHECK_MESSAGE(r.passed(), r.name);
      CHECK(r.seed == 3);
    }
  }
  SUBCASE("all on an ellipse skips the polyhedral suites") {
    const auto rs = run_suite(spec_of(ellipse()), "all", quick());
    CHECK(names(rs) == std::vector<std::string>{"c_convexity", "metric_consistency", "homeomorphism",
                                                "exhaustion_monotone"});
  }
  SUBCASE("named suites that do not apply") {
    try {
      run_suite(spec_of(ellipse()), "linconv", quick());
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedConfiguration);
    }
    try {
      run_suite(spec_of(square_v()), "action", quick());
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedConfiguration);
    }
  }
  SUBCASE("unknown suite") {
    try {
      run_suite(spec_of(square_v()), "everything", quick());
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }
  SUBCASE("punctured control") {
    DomainSpec s = spec_of(interval());
    s.control_puncture = 0.3;
    const auto rs = run_suite(s, "cconv", quick());
    REQUIRE(rs.size() == 1);
    CHECK_FALSE(rs[0].passed());
  }
  SUBCASE("deterministic") {
    const auto a = run_suite(spec_of(simplex_v()), "metric", quick());
    const auto b = run_suite(spec_of(simplex_v()), "metric", quick());
    CHECK(to_text(a[0]) == to_text(b[0]));
  }
}

TEST_CASE("punctured membership") {
  const Tube t(interval());
  const MembershipFn m = punctured_membership(t, 0.3);
  CHECK_FALSE(m(c1(0.1 * I)));
  CHECK_FALSE(m(c1(Complex(0.3, 0))));
  CHECK(m(c1(0.5 * I)));
  CHECK_FALSE(m(c1(1.5 * I)));
}
