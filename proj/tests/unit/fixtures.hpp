#pragma once

#include <cmath>
#include <numbers>

#include "etube/domain.hpp"

namespace fixtures {

using etube::Chart;
using etube::ConvexDomain;
using etube::Mat;
using etube::Vec;

inline Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}
inline Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
inline Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

inline ConvexDomain interval() { return ConvexDomain::interval(-1.0, 1.0); }

inline ConvexDomain square_v() {
  return ConvexDomain::vpolytope({v2(-1, -1), v2(1, -1), v2(1, 1), v2(-1, 1)}, v2(0, 0), {}, "square");
}

inline ConvexDomain square_h() {
  return ConvexDomain::hdomain({v3(1, 0, 1), v3(-1, 0, 1), v3(0, 1, 1), v3(0, -1, 1)}, v2(0, 0), {}, "square");
}

/// Positive orthant of RP^2 in the chart with infinity x1 + x2 + x3.
inline Chart simplex_chart() { return Chart(v3(1, 1, 1), {v3(1, 0, 0), v3(0, 1, 0)}); }

inline ConvexDomain simplex_v() {
  return ConvexDomain::vpolytope({v2(0, 0), v2(1, 0), v2(0, 1)}, v2(1.0 / 3, 1.0 / 3), simplex_chart(), "simplex");
}

inline ConvexDomain simplex_h() {
  return ConvexDomain::hdomain({v3(1, 0, 0), v3(0, 1, 0), v3(-1, -1, 1)}, v2(1.0 / 3, 1.0 / 3), simplex_chart(),
                               "simplex");
}

/// Rotated ellipse with semi-axes 0.8 and 0.5 centred at (0.1, -0.2).
inline ConvexDomain ellipse() {
  const double th = 0.4;
  Mat r(2, 2);
  r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0 / (0.8 * 0.8);
  d(1, 1) = 1.0 / (0.5 * 0.5);
  return ConvexDomain::ellipsoid(v2(0.1, -0.2), Mat(r * d * r.transpose()), {}, {}, "ellipse");
}

inline ConvexDomain circle() { return ConvexDomain::ellipsoid(v2(0, 0), Mat(Mat::Identity(2, 2)), {}, {}, "circle"); }

}  // namespace fixtures
