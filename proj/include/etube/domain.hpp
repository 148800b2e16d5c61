#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "etube/projective.hpp"
#include "etube/report.hpp"

namespace etube {

/// Convex hull of finitely many chart points.
struct VPolytope {
  std::vector<Vec> vertices;
};

/// {x : f(x~) > 0 for every f}; functionals act on chart-frame lifts (x, 1)
/// and are sign-normalized to be positive at the reference point.
struct HDomain {
  std::vector<Vec> functionals;
};

/// {x : (x - center)^T shape (x - center) < 1} in chart coordinates.
struct Ellipsoid {
  Vec center;
  Mat shape;
};

enum class RepKind { VPolytope, HDomain, Ellipsoid };

/// Axis-aligned box in chart coordinates.
struct Box {
  Vec lo;
  Vec hi;
  double diameter() const { return (hi - lo).norm(); }
};

/// Interval L ∩ D on a real line, in the line's coordinate. The lifts v0, v1
/// (chart frame) are the endpoint lifts with interior {c0 v0 + c1 v1 : c0 c1 > 0}.
struct Interval {
  RealLine line;
  double a;
  double b;
  Vec v0;
  Vec v1;
};

/// Properly convex open set in an affine chart. All geometry is stored in
/// chart coordinates; the chart maps world lifts into the frame.
class ConvexDomain {
 public:
  static ConvexDomain vpolytope(std::vector<Vec> vertices, std::optional<Vec> reference = {},
                                std::optional<Chart> chart = {}, std::string name = "vpolytope");
  static ConvexDomain hdomain(std::vector<Vec> functionals, Vec reference,
                              std::optional<Chart> chart = {}, std::string name = "hdomain");
  static ConvexDomain ellipsoid(Vec center, Mat shape, std::optional<Vec> reference = {},
                                std::optional<Chart> chart = {}, std::string name = "ellipsoid");
  /// The interval (a, b) of RP^1 as an H-representation {t - a, b - t}.
  static ConvexDomain interval(double a, double b, std::optional<Chart> chart = {},
                               std::string name = "interval");

  int dimension() const { return dim_; }
  RepKind kind() const;
  const VPolytope* as_vpolytope() const { return std::get_if<VPolytope>(&rep_); }
  const HDomain* as_hdomain() const { return std::get_if<HDomain>(&rep_); }
  const Ellipsoid* as_ellipsoid() const { return std::get_if<Ellipsoid>(&rep_); }
  const Chart& chart() const { return chart_; }
  const Vec& reference() const { return reference_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool is_polyhedral() const { return kind() != RepKind::Ellipsoid; }
  /// Chart-frame functionals, positive inside (facets for a V-polytope, the
  /// given family for an H-domain). Empty for ellipsoids.
  const std::vector<Vec>& halfspaces() const { return halfspaces_; }
  /// Chart vertices (given for a V-polytope, enumerated for an H-domain).
  const std::vector<Vec>& vertices() const { return vertices_; }
  /// Whether the polyhedral cone has a ray at or beyond infinity.
  bool unbounded() const { return unbounded_; }

  /// Quadric matrix of an ellipsoid in the chart frame: X^T Q X < 0 inside.
  Mat quadric() const;

 private:
  ConvexDomain(std::variant<VPolytope, HDomain, Ellipsoid> rep, Vec reference, Chart chart,
               std::string name);
  void build_cache();

  std::variant<VPolytope, HDomain, Ellipsoid> rep_;
  Chart chart_;
  Vec reference_;
  std::string name_;
  int dim_ = 0;
  std::vector<Vec> halfspaces_;
  std::vector<Vec> vertices_;
  bool unbounded_ = false;
};

/// Extreme rays of the closed cone {X : r . X >= 0 for all rows r}, one
/// normalized representative per ray.
std::vector<Vec> extreme_rays(const std::vector<Vec>& rows, double tol = 1e-10);

/// Dimension of the affine span of a point set.
int affine_rank(const std::vector<Vec>& pts, double tol);

/// Ellipsoid {X^T Q X < 0} from a chart-frame quadric; the sign of Q is chosen
/// so that `inside` is interior. Throws Infinity when the set is not bounded.
ConvexDomain ellipsoid_from_quadric(Mat q, const Vec& inside, const Chart& chart, std::string name);

/// Open parameter interval {s : p + s d in D}. Exact for every representation.
/// Intervals with (s_b - s_a) |d| < 1e-10 are reported empty.
std::optional<std::pair<double, double>> clip_params(const ConvexDomain& d, const Vec& p,
                                                     const Vec& dir);

bool contains(const ConvexDomain& d, const Vec& x);
bool contains(const ConvexDomain& d, const HPoint& x);

/// L ∩ D in the coordinate of L's span basis (L given in the chart frame).
/// Throws InvalidArgument when the basis point v lies in D, since the
/// interval would then contain the coordinate's pole.
std::optional<Interval> line_clip(const ConvexDomain& d, const RealLine& line);

/// Canonical chart-frame line through chart point p with direction dir: the
/// base point is the foot of the perpendicular from the chart origin, the
/// direction is unit with its first non-negligible entry positive.
RealLine chart_line(const Vec& p, const Vec& dir);
/// Chart point of line coordinate t on a line whose v() is a direction.
Vec line_point(const RealLine& line, double t);
CVec line_point(const RealLine& line, Complex t);
/// Unit chart direction of a canonical line.
Vec line_direction(const RealLine& line);

double hilbert_distance(const ConvexDomain& d, const Vec& x, const Vec& y);
double finsler_norm(const ConvexDomain& d, const Vec& x, const Vec& w);

/// Minkowski gauge about the reference point: < 1 inside, 1 on the boundary.
double gauge(const ConvexDomain& d, const Vec& x);

/// (1 - delta) D, scaled about the reference point.
ConvexDomain scaled_copy(const ConvexDomain& d, double delta);

/// Image of D under a world projective map; throws Infinity if the image is
/// not bounded in D's chart.
ConvexDomain transformed(const ConvexDomain& d, const ProjectiveMap& a);

/// Polyhedral domains as H-representations (V-polytopes via their facets).
ConvexDomain to_hdomain(const ConvexDomain& d);

Box bounding_box(const ConvexDomain& d);

VerifierReport validate(const ConvexDomain& d);

/// Whether the real projective map A maps D onto itself (vertex sets for
/// polytopes, quadric for ellipsoids, plus A(x0) in D).
bool preserves(const ConvexDomain& d, const ProjectiveMap& a, double tol = 1e-9);

}  // namespace etube
