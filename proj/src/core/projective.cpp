#include "etube/projective.hpp"

#include <cmath>
#include <limits>

namespace etube {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RealPoint: return "RealPointError";
    case ErrorCode::Collinearity: return "CollinearityError";
    case ErrorCode::Degenerate: return "DegenerateError";
    case ErrorCode::Infinity: return "InfinityError";
    case ErrorCode::NotInterior: return "NotInteriorError";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::InsideTube: return "InsideTubeError";
    case ErrorCode::NotBoundary: return "NotBoundaryError";
    case ErrorCode::Representation: return "RepresentationError";
    case ErrorCode::EmptySlice: return "EmptySliceError";
    case ErrorCode::OutsideTube: return "OutsideTubeError";
    case ErrorCode::UnsupportedConfiguration: return "UnsupportedConfigurationError";
    case ErrorCode::RealInput: return "RealInputError";
    case ErrorCode::ZeroDirection: return "ZeroDirectionError";
    case ErrorCode::Resolution: return "ResolutionError";
    case ErrorCode::GroupValidation: return "GroupValidationError";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
  }
  return "Error";
}

CVec normalize_lift(const CVec& v, double rel) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) raise(ErrorCode::InvalidArgument, "zero or non-finite lift");
  CVec out = v / n;
  for (int i = 0; i < out.size(); ++i) {
    if (std::abs(out(i)) > rel) {
      const Complex phase = std::conj(out(i)) / std::abs(out(i));
      out *= phase;
      out(i) = Complex(out(i).real(), 0.0);
      break;
    }
  }
  return out;
}

Vec normalize_lift(const Vec& v, double rel) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) raise(ErrorCode::InvalidArgument, "zero or non-finite lift");
  Vec out = v / n;
  for (int i = 0; i < out.size(); ++i) {
    if (std::abs(out(i)) > rel) {
      if (out(i) < 0) out = -out;
      break;
    }
  }
  return out;
}

template <class Tag>
Homogeneous<Tag>::Homogeneous(const Vec& coords)
    : coords_(normalize_lift(complexify(coords))), kind_(ScalarKind::Real) {}

template <class Tag>
Homogeneous<Tag>::Homogeneous(const CVec& coords, ScalarKind kind)
    : coords_(normalize_lift(coords)), kind_(kind) {}

template class Homogeneous<detail::PointTag>;
template class Homogeneous<detail::FunctionalTag>;

Complex pairing(const CVec& f, const CVec& p) {
  if (f.size() != p.size()) raise(ErrorCode::InvalidArgument, "pairing: size mismatch");
  return (f.transpose() * p)(0);
}

Complex pairing(const Functional& f, const HPoint& p) { return pairing(f.coords(), p.coords()); }

bool projectively_equal(const CVec& a, const CVec& b, double tol) {
  if (a.size() != b.size()) return false;
  Eigen::Matrix<Complex, 2, Eigen::Dynamic, 0, 2, kMaxHomogeneous> stack(2, a.size());
  stack.row(0) = a.normalized().transpose();
  stack.row(1) = b.normalized().transpose();
  Eigen::JacobiSVD<decltype(stack)> svd(stack);
  const auto s = svd.singularValues();
  return s(1) < tol * s(0);
}

bool projectively_equal(const HPoint& a, const HPoint& b, double tol) {
  return projectively_equal(a.coords(), b.coords(), tol);
}

namespace {

// Rotates the phase of a complex lift so that its real and imaginary parts are
// orthogonal with |real| >= |imag| (principal axes of the 2 x (n+1) stack).
std::pair<Vec, Vec> principal_parts(const CVec& lift) {
  const Vec a = lift.real();
  const Vec b = lift.imag();
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  const double ab = a.dot(b);
  const double theta = 0.5 * std::atan2(-2.0 * ab, aa - bb);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {Vec(a * c - b * s), Vec(a * s + b * c)};
}

}  // namespace

RealityTest is_real(const HPoint& z, double tol) {
  auto [u, v] = principal_parts(z.coords());
  RealityTest out;
  if (v.norm() < tol * u.norm()) {
    out.is_real = true;
    out.real_rep = HPoint(u);
  }
  return out;
}

RealLine::RealLine(const Vec& u, const Vec& v) : u_(u), v_(v) {
  if (u.size() != v.size()) raise(ErrorCode::InvalidArgument, "RealLine: size mismatch");
  Eigen::Matrix<double, Eigen::Dynamic, 2, 0, kMaxHomogeneous, 2> b(u.size(), 2);
  b.col(0) = u.normalized();
  b.col(1) = v.normalized();
  Eigen::JacobiSVD<decltype(b)> svd(b);
  const auto s = svd.singularValues();
  if (!(s(1) > 1e-12 * s(0))) raise(ErrorCode::InvalidArgument, "RealLine: span has rank < 2");
}

namespace {

Eigen::Matrix<Complex, 2, 1> span_coefficients(const Vec& u, const Vec& v, const CVec& lift) {
  Eigen::Matrix2d g;
  g << u.dot(u), u.dot(v), u.dot(v), v.dot(v);
  Eigen::Matrix<Complex, 2, 1> rhs;
  rhs << (complexify(u).transpose() * lift)(0), (complexify(v).transpose() * lift)(0);
  const Eigen::Matrix2d gi = g.inverse();
  return gi.cast<Complex>() * rhs;
}

}  // namespace

double RealLine::residual(const CVec& lift) const {
  const CVec l = lift / lift.norm();
  const auto c = span_coefficients(u_, v_, l);
  const CVec back = c(0) * complexify(u_) + c(1) * complexify(v_);
  return (l - back).norm();
}

Complex RealLine::coordinate(const CVec& lift, double tol) const {
  const CVec l = lift / lift.norm();
  const auto c = span_coefficients(u_, v_, l);
  const CVec back = c(0) * complexify(u_) + c(1) * complexify(v_);
  if ((l - back).norm() > tol) raise(ErrorCode::InvalidArgument, "point is not on the line");
  if (std::abs(c(0)) <= 1e-15 * std::abs(c(1))) {
    return Complex(std::numeric_limits<double>::infinity(), 0.0);
  }
  return c(1) / c(0);
}

double RealLine::coordinate(const Vec& lift, double tol) const {
  return coordinate(complexify(lift), tol).real();
}

CVec RealLine::lift(Complex t) const {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) return complexify(v_);
  return complexify(u_) + t * complexify(v_);
}

Vec RealLine::lift(double t) const {
  if (!std::isfinite(t)) return v_;
  return u_ + t * v_;
}

RealLine real_trace_line(const HPoint& z, double tol) {
  auto [u, v] = principal_parts(z.coords());
  if (v.norm() < tol * u.norm()) raise(ErrorCode::RealPoint, "real_trace_line: point is real");
  return RealLine(u, v);
}

double cross_ratio(double a, double x, double y, double b) {
  const double den = (a - x) * (b - y);
  if (den == 0.0) raise(ErrorCode::Degenerate, "cross_ratio: a = x or b = y");
  return ((a - y) * (b - x)) / den;
}

double cross_ratio(const HPoint& a, const HPoint& x, const HPoint& y, const HPoint& b,
                   double tol) {
  const int n = a.size();
  Eigen::Matrix<double, 4, Eigen::Dynamic, 0, 4, kMaxHomogeneous> m(4, n);
  const HPoint* pts[4] = {&a, &x, &y, &b};
  for (int i = 0; i < 4; ++i) {
    if (pts[i]->size() != n) raise(ErrorCode::InvalidArgument, "cross_ratio: size mismatch");
    if (!is_real(*pts[i]).is_real) raise(ErrorCode::InvalidArgument, "cross_ratio: points must be real");
    m.row(i) = pts[i]->real_coords().transpose();
  }
  Eigen::JacobiSVD<decltype(m)> svd(m, Eigen::ComputeThinV);
  const auto s = svd.singularValues();
  if (s.size() > 2 && s(2) > tol * s(0)) raise(ErrorCode::Collinearity, "cross_ratio: points are not collinear");
  const auto basis = svd.matrixV().leftCols(2);
  Eigen::Matrix<double, 4, 2> c = m * basis;
  auto bracket = [&](int i, int j) { return c(i, 0) * c(j, 1) - c(i, 1) * c(j, 0); };
  // a=0, x=1, y=2, b=3
  const double ax = bracket(0, 1);
  const double by = bracket(3, 2);
  if (std::abs(ax) < tol || std::abs(by) < tol) raise(ErrorCode::Degenerate, "cross_ratio: a = x or b = y");
  return (bracket(0, 2) * bracket(3, 1)) / (ax * by);
}

ProjectiveMap::ProjectiveMap(const Mat& m) : ProjectiveMap(CMat(m.cast<Complex>())) {}

ProjectiveMap::ProjectiveMap(const CMat& m) : m_(m) {
  if (m.rows() != m.cols() || m.rows() < 2) raise(ErrorCode::InvalidArgument, "ProjectiveMap: matrix must be square");
  const Complex det = m.determinant();
  const double scale = std::pow(m.norm(), static_cast<double>(m.rows()));
  if (!(std::abs(det) > 1e-13 * scale)) raise(ErrorCode::InvalidArgument, "ProjectiveMap: matrix is singular");
}

ProjectiveMap ProjectiveMap::identity(int size) { return ProjectiveMap(Mat(Mat::Identity(size, size))); }

bool ProjectiveMap::is_real(double tol) const { return m_.imag().norm() <= tol * m_.norm(); }

ProjectiveMap ProjectiveMap::inverse() const { return ProjectiveMap(CMat(m_.inverse())); }

ProjectiveMap ProjectiveMap::operator*(const ProjectiveMap& rhs) const {
  return ProjectiveMap(CMat(m_ * rhs.m_));
}

HPoint apply(const ProjectiveMap& a, const HPoint& p) {
  if (a.size() != p.size()) raise(ErrorCode::InvalidArgument, "apply: size mismatch");
  const bool real = p.kind() == ScalarKind::Real && a.is_real();
  return HPoint(CVec(a.matrix() * p.coords()), real ? ScalarKind::Real : ScalarKind::Complex);
}

Chart::Chart(const Mat& frame) : frame_(frame) {
  if (frame.rows() != frame.cols() || frame.rows() < 2) raise(ErrorCode::Validation, "chart frame must be square");
  Eigen::FullPivLU<Mat> lu(frame_);
  if (!lu.isInvertible()) raise(ErrorCode::Validation, "chart functionals are linearly dependent");
  inverse_ = lu.inverse();
}

namespace {
Mat stack_frame(const Vec& infinity, const std::vector<Vec>& basis) {
  const int size = static_cast<int>(infinity.size());
  if (static_cast<int>(basis.size()) != size - 1) raise(ErrorCode::Validation, "chart needs n basis functionals");
  Mat f(size, size);
  for (int i = 0; i < size - 1; ++i) {
    if (basis[static_cast<std::size_t>(i)].size() != size) raise(ErrorCode::Validation, "chart functional size mismatch");
    f.row(i) = basis[static_cast<std::size_t>(i)].transpose();
  }
  f.row(size - 1) = infinity.transpose();
  return f;
}
}  // namespace

Chart::Chart(const Vec& infinity, const std::vector<Vec>& basis) : Chart(stack_frame(infinity, basis)) {}

Chart Chart::standard(int n) { return Chart(Mat(Mat::Identity(n + 1, n + 1))); }

Vec Chart::coords(const Vec& lift) const {
  const Vec x = frame_ * lift;
  const int n = dimension();
  if (std::abs(x(n)) <= 1e-14 * x.norm()) raise(ErrorCode::Infinity, "point lies on the hyperplane at infinity");
  return x.head(n) / x(n);
}

CVec Chart::coords(const CVec& lift) const {
  const CVec x = frame_.cast<Complex>() * lift;
  const int n = dimension();
  if (std::abs(x(n)) <= 1e-14 * x.norm()) raise(ErrorCode::Infinity, "point lies on the hyperplane at infinity");
  return x.head(n) / x(n);
}

Vec Chart::coords(const HPoint& p) const {
  if (!is_real(p).is_real) raise(ErrorCode::InvalidArgument, "chart coords: point is not real");
  // Rotate away the global phase before taking real parts.
  const CVec c = coords(p.coords());
  return c.real();
}

CVec Chart::complex_coords(const HPoint& p) const { return coords(p.coords()); }

Vec Chart::lift(const Vec& x) const {
  Vec h(x.size() + 1);
  h.head(x.size()) = x;
  h(x.size()) = 1.0;
  return inverse_ * h;
}

CVec Chart::lift(const CVec& z) const {
  CVec h(z.size() + 1);
  h.head(z.size()) = z;
  h(z.size()) = 1.0;
  return inverse_.cast<Complex>() * h;
}

Mat Chart::to_frame(const Mat& world) const { return frame_ * world * inverse_; }

CMat Chart::to_frame(const CMat& world) const {
  return frame_.cast<Complex>() * world * inverse_.cast<Complex>();
}

Vec Chart::functional_to_frame(const Vec& world) const { return (world.transpose() * inverse_).transpose(); }

Vec Chart::functional_to_world(const Vec& framed) const { return (framed.transpose() * frame_).transpose(); }

Vec apply_in_chart(const ProjectiveMap& a, const Chart& chart, const Vec& x) {
  if (!a.is_real()) raise(ErrorCode::InvalidArgument, "apply_in_chart: map is not real");
  const Mat b = chart.to_frame(a.real_matrix());
  const int n = chart.dimension();
  Vec h(n + 1);
  h.head(n) = x;
  h(n) = 1.0;
  const Vec y = b * h;
  if (std::abs(y(n)) <= 1e-14 * y.norm()) raise(ErrorCode::Infinity, "image lies on the hyperplane at infinity");
  return y.head(n) / y(n);
}

CVec apply_in_chart(const ProjectiveMap& a, const Chart& chart, const CVec& z) {
  const CMat b = chart.to_frame(a.matrix());
  const int n = chart.dimension();
  CVec h(n + 1);
  h.head(n) = z;
  h(n) = 1.0;
  const CVec y = b * h;
  if (std::abs(y(n)) <= 1e-14 * y.norm()) raise(ErrorCode::Infinity, "image lies on the hyperplane at infinity");
  return y.head(n) / y(n);
}

Vec pushforward(const ProjectiveMap& a, const Chart& chart, const Vec& x, const Vec& w) {
  if (!a.is_real()) raise(ErrorCode::InvalidArgument, "pushforward: map is not real");
  const Mat b = chart.to_frame(a.real_matrix());
  const int n = chart.dimension();
  Vec h(n + 1);
  h.head(n) = x;
  h(n) = 1.0;
  const Vec y = b * h;
  if (std::abs(y(n)) <= 1e-14 * y.norm()) raise(ErrorCode::Infinity, "image lies on the hyperplane at infinity");
  const Vec dy = b.leftCols(n) * w;
  // quotient rule for y.head(n) / y(n)
  return (dy.head(n) * y(n) - y.head(n) * dy(n)) / (y(n) * y(n));
}

Complex LineChart::to_line(const HPoint& p) const {
  if (kind == LineKind::Real && !is_real(p).is_real) {
    raise(ErrorCode::InvalidArgument, "line_chart: complex point on a real line chart");
  }
  return line.coordinate(p.coords());
}

HPoint LineChart::from_line(Complex t) const {
  if (kind == LineKind::Real) {
    if (t.imag() != 0.0) raise(ErrorCode::InvalidArgument, "line_chart: complex coordinate on a real line chart");
    return HPoint(line.lift(t.real()));
  }
  return HPoint(line.lift(t), ScalarKind::Complex);
}

LineChart line_chart(const RealLine& line, LineKind kind) { return LineChart{line, kind}; }

}  // namespace etube
