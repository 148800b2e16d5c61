#include "etube/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace etube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec homogenize(const Vec& x) {
  Vec h(x.size() + 1);
  h.head(x.size()) = x;
  h(x.size()) = 1.0;
  return h;
}

double eval_affine(const Vec& f, const Vec& x) {
  const auto n = x.size();
  return f.head(n).dot(x) + f(n);
}

Vec centroid(const std::vector<Vec>& pts) {
  Vec c = Vec::Zero(pts.front().size());
  for (const auto& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

bool is_spd(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  if ((m - m.transpose()).norm() > 1e-12 * std::max(1.0, m.norm())) return false;
  Eigen::LLT<Mat> llt(m);
  return llt.info() == Eigen::Success;
}

// Inside-positive orientation of a functional at a chart point.
Vec orient(const Vec& f, const Vec& x0) { return eval_affine(f, x0) < 0 ? Vec(-f) : f; }

std::optional<Chart> default_chart(const std::optional<Chart>& c, int n) {
  return c ? c : std::optional<Chart>(Chart::standard(n));
}

}  // namespace

int affine_rank(const std::vector<Vec>& pts, double tol) {
  if (pts.size() < 2) return 0;
  const auto n = pts.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size() - 1), n);
  for (std::size_t i = 1; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i - 1)) = (pts[i] - pts[0]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol * std::max(1.0, s(0))) ++r;
  return r;
}

std::vector<Vec> extreme_rays(const std::vector<Vec>& rows, double tol) {
  std::vector<Vec> out;
  if (rows.empty()) return out;
  const int big_n = static_cast<int>(rows.front().size());
  const int k = big_n - 1;
  const int m = static_cast<int>(rows.size());
  if (m < k) return out;
  std::vector<Vec> unit;
  unit.reserve(rows.size());
  for (const auto& r : rows) unit.push_back(r / r.norm());

  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  auto feasible = [&](const Vec& x) {
    for (const auto& r : unit)
      if (r.dot(x) < -tol) return false;
    return true;
  };
  while (true) {
    Mat a(k, big_n);
    for (int i = 0; i < k; ++i) a.row(i) = unit[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].transpose();
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const auto s = svd.singularValues();
    const bool full_rank = k == 0 || s(k - 1) > 1e-9 * s(0);
    if (full_rank) {
      Vec x = svd.matrixV().col(big_n - 1);
      x.normalize();
      std::optional<Vec> ray;
      if (feasible(x)) ray = x;
      else if (feasible(-x)) ray = Vec(-x);
      if (ray) {
        const bool dup = std::any_of(out.begin(), out.end(),
                                     [&](const Vec& o) { return (o - *ray).norm() < 1e-8; });
        if (!dup) out.push_back(*ray);
      }
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

ConvexDomain::ConvexDomain(std::variant<VPolytope, HDomain, Ellipsoid> rep, Vec reference, Chart chart,
                           std::string name)
    : rep_(std::move(rep)), chart_(std::move(chart)), reference_(std::move(reference)), name_(std::move(name)) {
  dim_ = chart_.dimension();
  if (reference_.size() != dim_) raise(ErrorCode::Validation, "reference point has wrong dimension");
  build_cache();
}

RepKind ConvexDomain::kind() const {
  switch (rep_.index()) {
    case 0: return RepKind::VPolytope;
    case 1: return RepKind::HDomain;
    default: return RepKind::Ellipsoid;
  }
}

ConvexDomain ConvexDomain::vpolytope(std::vector<Vec> vertices, std::optional<Vec> reference,
                                     std::optional<Chart> chart, std::string name) {
  if (vertices.empty()) raise(ErrorCode::Validation, "vpolytope needs vertices");
  const int n = static_cast<int>(vertices.front().size());
  for (const auto& v : vertices)
    if (v.size() != n) raise(ErrorCode::Validation, "vertex dimension mismatch");
  Vec ref = reference ? *reference : centroid(vertices);
  return ConvexDomain(VPolytope{std::move(vertices)}, std::move(ref), *default_chart(chart, n), std::move(name));
}

ConvexDomain ConvexDomain::hdomain(std::vector<Vec> functionals, Vec reference, std::optional<Chart> chart,
                                   std::string name) {
  if (functionals.empty()) raise(ErrorCode::Validation, "hdomain needs functionals");
  const int n = static_cast<int>(reference.size());
  for (auto& f : functionals) {
    if (f.size() != n + 1) raise(ErrorCode::Validation, "functional size must be dimension + 1");
    f = orient(f, reference);
  }
  return ConvexDomain(HDomain{std::move(functionals)}, std::move(reference), *default_chart(chart, n),
                      std::move(name));
}

ConvexDomain ConvexDomain::ellipsoid(Vec center, Mat shape, std::optional<Vec> reference,
                                     std::optional<Chart> chart, std::string name) {
  const int n = static_cast<int>(center.size());
  if (shape.rows() != n || shape.cols() != n) raise(ErrorCode::Validation, "ellipsoid shape must be n x n");
  Vec ref = reference ? *reference : center;
  return ConvexDomain(Ellipsoid{std::move(center), std::move(shape)}, std::move(ref), *default_chart(chart, n),
                      std::move(name));
}

ConvexDomain ConvexDomain::interval(double a, double b, std::optional<Chart> chart, std::string name) {
  if (!(a < b)) raise(ErrorCode::Validation, "interval needs a < b");
  Vec f1(2), f2(2), ref(1);
  f1 << 1.0, -a;
  f2 << -1.0, b;
  ref << 0.5 * (a + b);
  return hdomain({f1, f2}, ref, chart, std::move(name));
}

void ConvexDomain::build_cache() {
  halfspaces_.clear();
  vertices_.clear();
  unbounded_ = false;
  if (const auto* vp = as_vpolytope()) {
    vertices_ = vp->vertices;
    std::vector<Vec> lifts;
    for (const auto& v : vp->vertices) lifts.push_back(homogenize(v));
    halfspaces_ = extreme_rays(lifts);
  } else if (const auto* hd = as_hdomain()) {
    halfspaces_ = hd->functionals;
    Eigen::MatrixXd stack(static_cast<Eigen::Index>(hd->functionals.size()), dim_ + 1);
    for (std::size_t i = 0; i < hd->functionals.size(); ++i)
      stack.row(static_cast<Eigen::Index>(i)) = hd->functionals[i].normalized().transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(stack);
    lu.setThreshold(1e-10);
    if (lu.rank() < dim_ + 1) unbounded_ = true;
    const auto rays = extreme_rays(hd->functionals);
    if (rays.empty()) unbounded_ = true;
    for (const auto& x : rays) {
      if (x(dim_) > 1e-10) {
        vertices_.push_back(x.head(dim_) / x(dim_));
      } else {
        unbounded_ = true;
      }
    }
  }
}

Mat ConvexDomain::quadric() const {
  const auto* e = as_ellipsoid();
  if (!e) raise(ErrorCode::Representation, "quadric: not an ellipsoid");
  const int n = dim_;
  Mat q(n + 1, n + 1);
  q.topLeftCorner(n, n) = e->shape;
  const Vec sc = e->shape * e->center;
  q.topRightCorner(n, 1) = -sc;
  q.bottomLeftCorner(1, n) = -sc.transpose();
  q(n, n) = e->center.dot(sc) - 1.0;
  return q;
}

ConvexDomain ellipsoid_from_quadric(Mat q, const Vec& inside, const Chart& chart, std::string name) {
  const int n = static_cast<int>(q.rows()) - 1;
  const Vec h = homogenize(inside);
  if (h.dot(q * h) > 0) q = -q;
  const Mat a = 0.5 * (q.topLeftCorner(n, n) + q.topLeftCorner(n, n).transpose());
  if (!is_spd(a)) raise(ErrorCode::Infinity, "quadric image is not bounded in the chart");
  const Vec b = q.topRightCorner(n, 1);
  const Vec center = -a.llt().solve(b);
  const double k = q(n, n) - b.dot(a.llt().solve(b));
  if (!(k < 0)) raise(ErrorCode::Validation, "quadric has empty interior");
  return ConvexDomain::ellipsoid(center, Mat(a / (-k)), inside, chart, std::move(name));
}

std::optional<std::pair<double, double>> clip_params(const ConvexDomain& d, const Vec& p, const Vec& dir) {
  double lo = -kInf;
  double hi = kInf;
  if (const auto* e = d.as_ellipsoid()) {
    const Vec pc = p - e->center;
    const Vec sd = e->shape * dir;
    const double a = dir.dot(sd);
    const double b = pc.dot(sd);
    const double c = pc.dot(e->shape * pc) - 1.0;
    if (!(a > 0)) return std::nullopt;
    const double disc = b * b - a * c;
    if (!(disc > 0)) return std::nullopt;
    const double q = -(b + std::copysign(std::sqrt(disc), b));
    double r1 = q / a;
    double r2 = q != 0.0 ? c / q : -r1;
    if (r1 > r2) std::swap(r1, r2);
    lo = r1;
    hi = r2;
  } else {
    const auto n = p.size();
    for (const auto& f : d.halfspaces()) {
      const double alpha = f.head(n).dot(p) + f(n);
      double beta = f.head(n).dot(dir);
      if (std::abs(beta) <= 1e-15 * f.head(n).norm() * dir.norm()) beta = 0.0;
      if (beta > 0) {
        lo = std::max(lo, -alpha / beta);
      } else if (beta < 0) {
        hi = std::min(hi, -alpha / beta);
      } else if (!(alpha > 1e-14 * f.norm() * (1.0 + p.norm()))) {
        return std::nullopt;
      }
    }
    if (d.halfspaces().empty()) return std::nullopt;
  }
  if (!(hi > lo) || (hi - lo) * dir.norm() < 1e-10) return std::nullopt;
  return std::make_pair(lo, hi);
}

bool contains(const ConvexDomain& d, const Vec& x) {
  if (const auto* e = d.as_ellipsoid()) {
    const Vec r = x - e->center;
    return r.dot(e->shape * r) < 1.0;
  }
  if (d.halfspaces().empty()) return false;
  int sign = 0;
  for (const auto& f : d.halfspaces()) {
    const double v = eval_affine(f, x);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) return false;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return true;
}

bool contains(const ConvexDomain& d, const HPoint& x) {
  if (!is_real(x).is_real) return false;
  try {
    return contains(d, d.chart().coords(x));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infinity) return false;
    throw;
  }
}

RealLine chart_line(const Vec& p, const Vec& dir) {
  const double len = dir.norm();
  if (!(len > 0)) raise(ErrorCode::InvalidArgument, "chart_line: zero direction");
  Vec d = normalize_lift(Vec(dir / len));
  const Vec base = p - p.dot(d) * d;
  Vec v = Vec::Zero(p.size() + 1);
  v.head(p.size()) = d;
  return RealLine(homogenize(base), v);
}

Vec line_point(const RealLine& line, double t) {
  const Vec l = line.lift(t);
  const auto n = l.size() - 1;
  if (std::abs(l(n)) <= 1e-14 * l.norm()) raise(ErrorCode::Infinity, "line point at infinity");
  return l.head(n) / l(n);
}

CVec line_point(const RealLine& line, Complex t) {
  const CVec l = line.lift(t);
  const auto n = l.size() - 1;
  if (std::abs(l(n)) <= 1e-14 * l.norm()) raise(ErrorCode::Infinity, "line point at infinity");
  return l.head(n) / l(n);
}

Vec line_direction(const RealLine& line) {
  const auto n = line.v().size() - 1;
  if (std::abs(line.v()(n)) > 1e-14 * line.v().norm()) {
    // v finite: direction from u's point to v's point
    const Vec pu = line_point(line, 0.0);
    const Vec pv = line.v().head(n) / line.v()(n);
    return (pv - pu).normalized();
  }
  return line.v().head(n).normalized();
}

std::optional<Interval> line_clip(const ConvexDomain& d, const RealLine& line) {
  const auto n = line.u().size() - 1;
  const bool affine_basis = std::abs(line.u()(n)) > 1e-14 * line.u().norm() &&
                            std::abs(line.v()(n)) <= 1e-14 * line.v().norm();
  double a = 0, b = 0;
  if (affine_basis) {
    const Vec p = line.u().head(n) / line.u()(n);
    const Vec dir = line.v().head(n) / line.u()(n);
    const auto c = clip_params(d, p, dir);
    if (!c) return std::nullopt;
    a = c->first;
    b = c->second;
  } else {
    // Reduce to an affine parametrization of the same line and map back.
    Vec p0, p1;
    bool have0 = false;
    for (double t : {0.0, 1.0, -1.0, 2.0}) {
      const Vec l = line.lift(t);
      if (std::abs(l(n)) > 1e-9 * l.norm()) {
        if (!have0) {
          p0 = l.head(n) / l(n);
          have0 = true;
        } else {
          p1 = l.head(n) / l(n);
          if ((p1 - p0).norm() > 1e-12) break;
        }
      }
    }
    if (!have0) return std::nullopt;
    const auto c = clip_params(d, p0, p1 - p0);
    if (!c) return std::nullopt;
    const Vec ea = p0 + c->first * (p1 - p0);
    const Vec eb = p0 + c->second * (p1 - p0);
    if (contains(d, line_point(line, kInf))) {
      raise(ErrorCode::InvalidArgument, "line_clip: basis point v lies inside the domain");
    }
    a = line.coordinate(homogenize(ea));
    b = line.coordinate(homogenize(eb));
    if (a > b) std::swap(a, b);
  }
  const Vec v0 = homogenize(line_point(line, a));
  const Vec v1 = homogenize(line_point(line, b));
  return Interval{line, a, b, v0, v1};
}

double hilbert_distance(const ConvexDomain& d, const Vec& x, const Vec& y) {
  if (!contains(d, x) || !contains(d, y)) raise(ErrorCode::NotInterior, "hilbert_distance: point not in domain");
  const Vec dir = y - x;
  if (dir.norm() == 0.0) return 0.0;
  const auto c = clip_params(d, x, dir);
  if (!c) raise(ErrorCode::NotInterior, "hilbert_distance: degenerate chord");
  const double sa = c->first;
  const double sb = c->second;
  // cross_ratio(sa, 0, 1, sb) - 1, written without cancellation
  const double excess = (sb - sa) / ((-sa) * (sb - 1.0));
  return 0.5 * std::log1p(excess);
}

double finsler_norm(const ConvexDomain& d, const Vec& x, const Vec& w) {
  if (!contains(d, x)) raise(ErrorCode::NotInterior, "finsler_norm: point not in domain");
  if (!(w.norm() > 0)) raise(ErrorCode::InvalidArgument, "finsler_norm: zero vector");
  const auto c = clip_params(d, x, w);
  if (!c) raise(ErrorCode::NotInterior, "finsler_norm: degenerate chord");
  return 0.5 * (1.0 / (-c->first) + 1.0 / c->second);
}

double gauge(const ConvexDomain& d, const Vec& x) {
  const Vec dir = x - d.reference();
  if (dir.norm() == 0.0) return 0.0;
  const auto c = clip_params(d, d.reference(), dir);
  if (!c || !(c->first < 0 && c->second > 0)) raise(ErrorCode::NotInterior, "gauge: reference point not interior");
  return 1.0 / c->second;
}

ConvexDomain scaled_copy(const ConvexDomain& d, double delta) {
  if (!(delta > 0 && delta < 1)) raise(ErrorCode::InvalidArgument, "scaled_copy: delta must lie in (0, 1)");
  const double lambda = 1.0 - delta;
  const Vec& x0 = d.reference();
  std::ostringstream name;
  name << d.name() << "*" << lambda;
  if (const auto* vp = d.as_vpolytope()) {
    std::vector<Vec> verts;
    for (const auto& v : vp->vertices) verts.push_back(x0 + lambda * (v - x0));
    return ConvexDomain::vpolytope(std::move(verts), x0, d.chart(), name.str());
  }
  if (const auto* hd = d.as_hdomain()) {
    const int n = d.dimension();
    std::vector<Vec> fs;
    for (const auto& f : hd->functionals) {
      Vec g(n + 1);
      g.head(n) = f.head(n) / lambda;
      g(n) = f(n) + f.head(n).dot(x0) * (1.0 - 1.0 / lambda);
      fs.push_back(g);
    }
    return ConvexDomain::hdomain(std::move(fs), x0, d.chart(), name.str());
  }
  const auto* e = d.as_ellipsoid();
  return ConvexDomain::ellipsoid(x0 + lambda * (e->center - x0), Mat(e->shape / (lambda * lambda)), x0, d.chart(),
                                 name.str());
}

ConvexDomain transformed(const ConvexDomain& d, const ProjectiveMap& a) {
  if (!a.is_real()) raise(ErrorCode::InvalidArgument, "transformed: map must be real");
  if (a.size() != d.dimension() + 1) raise(ErrorCode::InvalidArgument, "transformed: size mismatch");
  const Mat b = d.chart().to_frame(a.real_matrix());
  const int n = d.dimension();
  auto image = [&](const Vec& x, double& last) {
    const Vec y = b * homogenize(x);
    last = y(n) / y.norm();
    if (std::abs(last) <= 1e-12) raise(ErrorCode::Infinity, "transformed: image meets infinity");
    return Vec(y.head(n) / y(n));
  };
  double ref_last = 0;
  const Vec ref = image(d.reference(), ref_last);
  if (const auto* vp = d.as_vpolytope()) {
    std::vector<Vec> verts;
    for (const auto& v : vp->vertices) {
      double last = 0;
      verts.push_back(image(v, last));
      if ((last > 0) != (ref_last > 0)) raise(ErrorCode::Infinity, "transformed: polytope crosses infinity");
    }
    return ConvexDomain::vpolytope(std::move(verts), ref, d.chart(), d.name());
  }
  if (const auto* hd = d.as_hdomain()) {
    const Mat binv = b.inverse();
    std::vector<Vec> fs;
    for (const auto& f : hd->functionals) fs.push_back((f.transpose() * binv).transpose());
    auto out = ConvexDomain::hdomain(std::move(fs), ref, d.chart(), d.name());
    if (out.unbounded()) raise(ErrorCode::Infinity, "transformed: image is unbounded in the chart");
    return out;
  }
  const Mat binv = b.inverse();
  const Mat q = binv.transpose() * d.quadric() * binv;
  return ellipsoid_from_quadric(q, ref, d.chart(), d.name());
}

ConvexDomain to_hdomain(const ConvexDomain& d) {
  if (d.kind() == RepKind::HDomain) return d;
  if (d.kind() == RepKind::Ellipsoid) raise(ErrorCode::Representation, "to_hdomain: ellipsoid has no finite family");
  return ConvexDomain::hdomain(d.halfspaces(), d.reference(), d.chart(), d.name());
}

Box bounding_box(const ConvexDomain& d) {
  const int n = d.dimension();
  if (const auto* e = d.as_ellipsoid()) {
    if (!is_spd(e->shape)) raise(ErrorCode::Validation, "unbounded in chart");
    const Mat inv = e->shape.inverse();
    Vec r(n);
    for (int i = 0; i < n; ++i) r(i) = std::sqrt(inv(i, i));
    return Box{Vec(e->center - r), Vec(e->center + r)};
  }
  if (d.unbounded() || d.vertices().empty()) raise(ErrorCode::Validation, "unbounded in chart");
  Vec lo = d.vertices().front();
  Vec hi = lo;
  for (const auto& v : d.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return Box{lo, hi};
}

VerifierReport validate(const ConvexDomain& d) {
  VerifierReport r;
  r.name = "validate";
  r.samples_run = 1;
  const int n = d.dimension();
  if (!d.reference().allFinite()) r.violation("reference point is not finite");
  if (const auto* e = d.as_ellipsoid()) {
    if (!e->center.allFinite() || !e->shape.allFinite()) r.violation("ellipsoid data is not finite");
    if (!is_spd(e->shape)) r.violation("unbounded in chart: ellipsoid shape is not symmetric positive definite");
  } else {
    if (d.unbounded()) {
      r.violation("unbounded in chart");
    } else if (static_cast<int>(d.vertices().size()) < n + 1 || affine_rank(d.vertices(), 1e-10) < n) {
      r.violation("not properly convex: contained in a projective hyperplane");
    }
    for (const auto& v : d.vertices())
      if (!v.allFinite()) r.violation("unbounded in chart: vertex is not finite");
    if (const auto* hd = d.as_hdomain()) {
      for (std::size_t i = 0; i < hd->functionals.size(); ++i) {
        const double val = eval_affine(hd->functionals[i], d.reference());
        if (!(val > 1e-12 * hd->functionals[i].norm())) {
          r.violation("functional " + std::to_string(i) + " is not positive at the reference point");
        }
      }
    }
    if (d.kind() == RepKind::VPolytope && d.halfspaces().empty()) {
      r.violation("not properly convex: vertices do not span the chart");
    }
  }
  if (r.passed() || d.kind() != RepKind::Ellipsoid) {
    bool inside = false;
    try {
      inside = contains(d, d.reference());
    } catch (const Error&) {
    }
    if (!inside) r.violation("reference point is not interior");
  }
  return r;
}

bool preserves(const ConvexDomain& d, const ProjectiveMap& a, double tol) {
  if (!a.is_real() || a.size() != d.dimension() + 1) return false;
  Vec ref_image;
  try {
    ref_image = apply_in_chart(a, d.chart(), d.reference());
  } catch (const Error&) {
    return false;
  }
  if (!contains(d, ref_image)) return false;
  if (d.kind() == RepKind::Ellipsoid) {
    const Mat b = d.chart().to_frame(a.real_matrix());
    const Mat binv = b.inverse();
    Mat q1 = binv.transpose() * d.quadric() * binv;
    Mat q0 = d.quadric();
    q1 /= q1.norm();
    q0 /= q0.norm();
    return std::min((q1 - q0).norm(), (q1 + q0).norm()) < tol;
  }
  const auto& verts = d.vertices();
  const double scale = std::max(1.0, bounding_box(d).diameter());
  for (const auto& v : verts) {
    Vec img;
    try {
      img = apply_in_chart(a, d.chart(), v);
    } catch (const Error&) {
      return false;
    }
    const bool hit = std::any_of(verts.begin(), verts.end(),
                                 [&](const Vec& w) { return (w - img).norm() < tol * scale; });
    if (!hit) return false;
  }
  return true;
}

}  // namespace etube
