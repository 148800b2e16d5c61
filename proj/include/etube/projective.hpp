#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "etube/types.hpp"

namespace etube {

enum class ScalarKind { Real, Complex };

namespace detail {
struct PointTag {};
struct FunctionalTag {};
}  // namespace detail

/// A nonzero homogeneous coordinate vector, taken up to scale.
///
/// The stored lift is normalized to unit Euclidean norm with its first
/// non-negligible coordinate real and positive, so equal classes built from
/// real data compare equal coordinate-wise up to rounding.
template <class Tag>
class Homogeneous {
 public:
  Homogeneous() = default;
  explicit Homogeneous(const Vec& coords);
  explicit Homogeneous(const CVec& coords, ScalarKind kind = ScalarKind::Complex);

  const CVec& coords() const { return coords_; }
  Vec real_coords() const { return coords_.real(); }
  ScalarKind kind() const { return kind_; }
  bool is_complex_kind() const { return kind_ == ScalarKind::Complex; }
  int size() const { return static_cast<int>(coords_.size()); }
  /// Projective dimension (size - 1).
  int dimension() const { return size() - 1; }

  Homogeneous conj() const {
    return Homogeneous(CVec(coords_.conjugate()), kind_);
  }

 private:
  CVec coords_;
  ScalarKind kind_ = ScalarKind::Real;
};

using HPoint = Homogeneous<detail::PointTag>;
using Functional = Homogeneous<detail::FunctionalTag>;

/// Scales `v` to unit norm with the first coordinate above `rel` * norm real
/// and positive. Throws InvalidArgument for the zero vector.
CVec normalize_lift(const CVec& v, double rel = 1e-12);
Vec normalize_lift(const Vec& v, double rel = 1e-12);

/// Bilinear pairing of lifts (no conjugation).
Complex pairing(const Functional& f, const HPoint& p);
Complex pairing(const CVec& f, const CVec& p);

/// Linear dependence test: second singular value of the 2 x (n+1) stack is
/// below `tol` times the largest one.
bool projectively_equal(const CVec& a, const CVec& b, double tol = 1e-9);
bool projectively_equal(const HPoint& a, const HPoint& b, double tol = 1e-9);

struct RealityTest {
  bool is_real = false;
  std::optional<HPoint> real_rep;
};

/// Reality of a complex class: the real and imaginary parts of a lift are
/// linearly dependent within `tol` (relative, on singular values).
RealityTest is_real(const HPoint& z, double tol = 1e-9);

/// Projective line spanned by two independent real lifts.
class RealLine {
 public:
  RealLine(const Vec& u, const Vec& v);

  const Vec& u() const { return u_; }
  const Vec& v() const { return v_; }
  int size() const { return static_cast<int>(u_.size()); }

  /// Line coordinate t of a lift c0 u + c1 v, t = c1 / c0 (infinity when c0 = 0).
  /// The lift must lie on the complexified line within `tol`.
  Complex coordinate(const CVec& lift, double tol = 1e-8) const;
  double coordinate(const Vec& lift, double tol = 1e-8) const;
  /// Lift u + t v.
  CVec lift(Complex t) const;
  Vec lift(double t) const;
  /// Distance of `lift` (normalized) from the complexified span.
  double residual(const CVec& lift) const;

 private:
  Vec u_;
  Vec v_;
};

/// The unique real line whose complexification contains the non-real point z.
/// With the lift written as z~ = u~ + i v~ after phase normalization, the
/// line is span{u~, v~}. Throws RealPoint when z is real within tolerance.
RealLine real_trace_line(const HPoint& z, double tol = 1e-9);

/// Cross-ratio ((a-y)(b-x)) / ((a-x)(b-y)) of four collinear real points.
/// Computed from 2x2 brackets in a basis of the common line, so it is valid
/// for points at infinity of any chart.
double cross_ratio(const HPoint& a, const HPoint& x, const HPoint& y, const HPoint& b,
                   double tol = 1e-9);
double cross_ratio(double a, double x, double y, double b);

/// Invertible (n+1) x (n+1) matrix acting on lifts.
class ProjectiveMap {
 public:
  explicit ProjectiveMap(const Mat& m);
  explicit ProjectiveMap(const CMat& m);

  static ProjectiveMap identity(int size);

  const CMat& matrix() const { return m_; }
  Mat real_matrix() const { return m_.real(); }
  bool is_real(double tol = 1e-14) const;
  int size() const { return static_cast<int>(m_.rows()); }

  ProjectiveMap inverse() const;
  ProjectiveMap operator*(const ProjectiveMap& rhs) const;

 private:
  CMat m_;
};

HPoint apply(const ProjectiveMap& a, const HPoint& p);

/// Affine chart: rows 0..n-1 of `frame` are the basis functionals, row n is
/// the hyperplane at infinity. Chart coordinates of x are basis_i(x~)/inf(x~).
class Chart {
 public:
  explicit Chart(const Mat& frame);
  Chart(const Vec& infinity, const std::vector<Vec>& basis);

  static Chart standard(int n);

  int dimension() const { return static_cast<int>(frame_.rows()) - 1; }
  const Mat& frame() const { return frame_; }
  const Mat& inverse_frame() const { return inverse_; }
  Vec infinity() const { return frame_.row(frame_.rows() - 1).transpose(); }

  /// Chart coordinates; throws Infinity on the hyperplane at infinity.
  Vec coords(const Vec& lift) const;
  CVec coords(const CVec& lift) const;
  Vec coords(const HPoint& p) const;
  CVec complex_coords(const HPoint& p) const;
  /// World lift of a chart point.
  Vec lift(const Vec& x) const;
  CVec lift(const CVec& z) const;
  HPoint point(const Vec& x) const { return HPoint(lift(x)); }
  HPoint point(const CVec& z) const { return HPoint(lift(z)); }

  /// World matrix expressed in the chart frame: F A F^{-1}.
  Mat to_frame(const Mat& world) const;
  CMat to_frame(const CMat& world) const;
  /// World functional expressed on chart-frame lifts: f F^{-1}.
  Vec functional_to_frame(const Vec& world) const;
  Vec functional_to_world(const Vec& framed) const;

 private:
  Mat frame_;
  Mat inverse_;
};

/// Derivative of the chart expression of A at chart point x, applied to w.
Vec pushforward(const ProjectiveMap& a, const Chart& chart, const Vec& x, const Vec& w);
/// Chart image of x under A (throws Infinity when A(x) leaves the chart).
Vec apply_in_chart(const ProjectiveMap& a, const Chart& chart, const Vec& x);
CVec apply_in_chart(const ProjectiveMap& a, const Chart& chart, const CVec& z);

enum class LineKind { Real, Complexified };

/// Mutually inverse maps between L (or L^C) and the standard projective line,
/// expressed through the span basis of L.
struct LineChart {
  RealLine line;
  LineKind kind;

  Complex to_line(const HPoint& p) const;
  HPoint from_line(Complex t) const;
};

LineChart line_chart(const RealLine& line, LineKind kind);

}  // namespace etube
