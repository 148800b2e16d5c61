#include <doctest.h>

#include <cmath>

#include "etube/projective.hpp"
#include "etube/rng.hpp"
#include "fixtures.hpp"

using namespace etube;
using fixtures::v2;
using fixtures::v3;

namespace {

CVec c2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return v;
}
CVec c3(Complex a, Complex b, Complex c) {
  CVec v(3);
  v << a, b, c;
  return v;
}

Mat random_matrix(Stream& rng, int size) {
  Mat m(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m(i, j) = rng.normal();
  return m;
}

// Affine cross-ratio evaluated directly.
double cr_oracle(double a, double x, double y, double b) { return ((a - y) * (b - x)) / ((a - x) * (b - y)); }

}  // namespace

TEST_CASE("reality test") {
  const Complex i(0, 1);
  auto r1 = is_real(HPoint(v2(1, 0.5)));
  CHECK(r1.is_real);
  CHECK(projectively_equal(*r1.real_rep, HPoint(v2(1, 0.5))));

  auto r2 = is_real(HPoint(c2(i, 0.5 * i)));
  REQUIRE(r2.is_real);
  CHECK(r2.real_rep->coords()(0).real() == doctest::Approx(1 / std::sqrt(1.25)));
  CHECK(std::abs(r2.real_rep->coords()(0).imag()) < 1e-15);
  CHECK(projectively_equal(*r2.real_rep, HPoint(v2(1, 0.5))));

  CHECK_FALSE(is_real(HPoint(c2(1.0, 0.5 * i))).is_real);
}

TEST_CASE("real trace line") {
  const Complex i(0, 1);
  const RealLine l1 = real_trace_line(HPoint(c3(0.5 * i, 0, 1)));
  CHECK(l1.residual(complexify(v3(0, 0, 1))) < 1e-12);
  CHECK(l1.residual(complexify(v3(1, 0, 0))) < 1e-12);
  CHECK(l1.residual(complexify(v3(0, 1, 0))) > 0.5);

  const RealLine l2 = real_trace_line(HPoint(c3(Complex(0.3, 0.4), 0.1, 1)));
  CHECK(l2.residual(complexify(v3(0.3, 0.1, 1))) < 1e-12);
  CHECK(l2.residual(complexify(v3(1, 0, 0))) < 1e-12);

  CHECK_THROWS_AS(real_trace_line(HPoint(v3(1, 2, 3))), Error);
  try {
    real_trace_line(HPoint(v3(1, 2, 3)));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RealPoint);
  }
}

TEST_CASE("point and conjugate lie on the complexified trace line") {
  Stream rng(1, 0);
  for (int k = 0; k < 500; ++k) {
    CVec z(3);
    for (int j = 0; j < 3; ++j) z(j) = Complex(rng.normal(), rng.normal());
    const HPoint p(z);
    const RealLine l = real_trace_line(p);
    // two independent functionals annihilating span{u, v}
    Mat b(2, 3);
    b.row(0) = l.u().transpose();
    b.row(1) = l.v().transpose();
    Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeFullV);
    const Vec f = svd.matrixV().col(2);
    CHECK(std::abs(pairing(complexify(f), p.coords())) < 1e-10);
    CHECK(std::abs(pairing(complexify(f), p.conj().coords())) < 1e-10);
  }
}

TEST_CASE("cross ratio values and invariance") {
  CHECK(cross_ratio(-1.0, 0.0, 0.5, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
  auto pt = [](double t) { return HPoint(v2(t, 1)); };
  CHECK(cross_ratio(pt(-1), pt(0), pt(0.5), pt(1)) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(cross_ratio(pt(-1), pt(0.2), pt(0.2), pt(1)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(cross_ratio(pt(0), pt(0), pt(0.5), pt(1)), Error);

  Stream rng(2, 0);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const double a = rng.uniform(-3, -1), x = rng.uniform(-1, 0), y = rng.uniform(0, 1), b = rng.uniform(1, 3);
    const double expect = cr_oracle(a, x, y, b);
    const ProjectiveMap m(random_matrix(rng, 2));
    auto img = [&](double t) { return apply(m, pt(t)); };
    const double got = cross_ratio(img(a), img(x), img(y), img(b));
    worst = std::max(worst, std::abs(got - expect) / std::abs(expect));
  }
  CHECK(worst < 1e-10);

  // collinear points in RP^2, with one point at infinity of the standard chart
  const HPoint a(v3(-1, 0.1, 1)), x(v3(0, 0.1, 1)), y(v3(0.5, 0.1, 1)), b(v3(1, 0, 0));
  CHECK(cross_ratio(a, x, y, b) == doctest::Approx(cr_oracle(-1, 0, 0.5, 1e300)).epsilon(1e-12));
  CHECK_THROWS_AS(cross_ratio(a, x, y, HPoint(v3(0, 1, 0))), Error);
}

TEST_CASE("apply and pushforward") {
  const Chart c = Chart::standard(1);
  Mat d(2, 2);
  d << 2, 0, 0, 0.5;
  const ProjectiveMap a(d);
  CHECK(apply_in_chart(a, c, fixtures::v1(1.0))(0) == doctest::Approx(4.0));
  CHECK(pushforward(a, c, fixtures::v1(1.0), fixtures::v1(1.0))(0) == doctest::Approx(4.0));
  const ProjectiveMap a7(Mat(7 * d));
  CHECK(pushforward(a7, c, fixtures::v1(1.0), fixtures::v1(1.0))(0) == doctest::Approx(4.0));
  const ProjectiveMap id = ProjectiveMap::identity(3);
  const HPoint p(v3(0.2, -0.4, 1));
  CHECK(projectively_equal(apply(id, p), p));

  // finite-difference oracle in a non-standard chart
  Stream rng(3, 0);
  const Chart c2(fixtures::v3(1, 1, 1), {v3(1, 0, 0), v3(0, 1, 0)});
  for (int k = 0; k < 100; ++k) {
    const ProjectiveMap m(Mat(Mat::Identity(3, 3) + 0.3 * random_matrix(rng, 3)));
    const Vec x = v2(rng.uniform(0.1, 0.4), rng.uniform(0.1, 0.4));
    const Vec w = v2(rng.normal(), rng.normal());
    const double h = 1e-6;
    const Vec fd = (apply_in_chart(m, c2, Vec(x + h * w)) - apply_in_chart(m, c2, Vec(x - h * w))) / (2 * h);
    const Vec an = pushforward(m, c2, x, w);
    CHECK((fd - an).norm() < 1e-6 * std::max(1.0, an.norm()));
  }

  Mat sing(2, 2);
  sing << 1, 0, 0, 0;
  const ProjectiveMap m(Mat(Mat::Identity(2, 2)));
  CHECK_THROWS_AS(ProjectiveMap{sing}, Error);
  Mat to_inf(2, 2);
  to_inf << 1, 0, 1, -1;  // t -> t / (t - 1)
  CHECK_THROWS_AS(apply_in_chart(ProjectiveMap(to_inf), c, fixtures::v1(1.0)), Error);
  (void)m;
}

TEST_CASE("conjugation commutes with real maps") {
  Stream rng(4, 0);
  for (int k = 0; k < 200; ++k) {
    const ProjectiveMap a(random_matrix(rng, 3));
    CVec z(3);
    for (int j = 0; j < 3; ++j) z(j) = Complex(rng.normal(), rng.normal());
    const HPoint p(z);
    CHECK(projectively_equal(apply(a, p).conj(), apply(a, p.conj())));
  }
}

TEST_CASE("projective equality relation") {
  Stream rng(5, 0);
  for (int k = 0; k < 200; ++k) {
    CVec z(3);
    for (int j = 0; j < 3; ++j) z(j) = Complex(rng.normal(), rng.normal());
    const Complex s1(rng.normal(), rng.normal()), s2(rng.normal(), rng.normal());
    const CVec a = z, b = s1 * z, c = s2 * b;
    CHECK(projectively_equal(a, a));
    CHECK(projectively_equal(a, b) == projectively_equal(b, a));
    CHECK(projectively_equal(a, b));
    CHECK(projectively_equal(b, c));
    CHECK(projectively_equal(a, c));
  }
  CHECK_FALSE(projectively_equal(complexify(v2(1, 0)), complexify(v2(0, 1))));
}

TEST_CASE("line chart") {
  const RealLine xaxis(v3(0, 0, 1), v3(1, 0, 0));
  const LineChart real_chart = line_chart(xaxis, LineKind::Real);
  CHECK(real_chart.to_line(HPoint(v3(0.7, 0, 1))).real() == doctest::Approx(0.7));

  const RealLine l(v3(0, 0.1, 1), v3(1, 0, 0));
  const LineChart cc = line_chart(l, LineKind::Complexified);
  const Complex w = cc.to_line(HPoint(c3(Complex(0.3, 0.4), 0.1, 1)));
  CHECK(std::abs(w - Complex(0.3, 0.4)) < 1e-14);
  for (Complex t : {Complex(0.1, 0.2), Complex(-3, 1), Complex(7, -0.5)}) {
    CHECK(std::abs(cc.to_line(cc.from_line(t)) - t) < 1e-14 * std::max(1.0, std::abs(t)));
    CHECK(std::abs(cc.to_line(cc.from_line(t).conj()) - std::conj(t)) < 1e-14 * std::max(1.0, std::abs(t)));
  }
}

TEST_CASE("chart round trip and validation") {
  const Chart c(v3(1, 1, 1), {v3(1, 0, 0), v3(0, 1, 0)});
  const Vec x = v2(0.2, 0.3);
  CHECK((c.coords(c.lift(x)) - x).norm() < 1e-15);
  CHECK_THROWS_AS(Chart(v3(1, 1, 0), {v3(1, 0, 0), v3(0, 1, 0)}), Error);
  CHECK_THROWS_AS(c.coords(v3(1, -1, 0)), Error);
}
