#include "etube/duality.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "etube/rng.hpp"

namespace etube {

namespace {

Vec dual_reference(const std::vector<Vec>& world_facets, const Vec& x0_lift) {
  Vec xi = Vec::Zero(x0_lift.size());
  for (const auto& f : world_facets) xi += f / f.dot(x0_lift);
  return xi;
}

std::vector<Vec> world_facets(const ConvexDomain& d) {
  std::vector<Vec> out;
  for (const auto& f : irredundant_functionals(d)) out.push_back(d.chart().functional_to_world(f));
  return out;
}

void require_valid(const ConvexDomain& d) {
  const auto r = validate(d);
  if (!r.passed()) raise(ErrorCode::Validation, r.violations.front());
}

}  // namespace

Functional annihilator(const HPoint& x) { return Functional(x.coords(), x.kind()); }

Chart dual_chart(const Vec& reference_lift) {
  const int size = static_cast<int>(reference_lift.size());
  int k = 0;
  reference_lift.cwiseAbs().maxCoeff(&k);
  std::vector<Vec> basis;
  for (int j = 0; j < size; ++j) {
    if (j == k) continue;
    basis.push_back(Vec::Unit(size, j));
  }
  return Chart(reference_lift, basis);
}

std::vector<Vec> irredundant_functionals(const ConvexDomain& d) {
  if (!d.is_polyhedral()) raise(ErrorCode::Representation, "irredundant_functionals: domain is not polyhedral");
  const int n = d.dimension();
  std::vector<Vec> unique;
  for (const auto& f : d.halfspaces()) {
    const Vec u = f / f.norm();
    const bool dup = std::any_of(unique.begin(), unique.end(),
                                 [&](const Vec& g) { return (g / g.norm() - u).norm() < 1e-10; });
    if (!dup) unique.push_back(f);
  }
  double scale = 1.0;
  for (const auto& v : d.vertices()) scale = std::max(scale, v.norm());
  std::vector<Vec> out;
  for (const auto& f : unique) {
    std::vector<Vec> on;
    for (const auto& v : d.vertices()) {
      const double val = f.head(n).dot(v) + f(n);
      if (std::abs(val) <= 1e-9 * f.norm() * scale) on.push_back(v);
    }
    if (static_cast<int>(on.size()) >= n && (n == 1 || affine_rank(on, 1e-9) >= n - 1)) out.push_back(f);
  }
  return out;
}

DualDomain dual_complement(const ConvexDomain& d) {
  require_valid(d);
  const Vec x0 = d.chart().lift(d.reference());
  const Chart g = dual_chart(x0);
  const std::string name = d.name() + "*";
  const std::string provenance = "dual complement of " + d.name();
  switch (d.kind()) {
    case RepKind::VPolytope: {
      std::vector<Vec> fs;
      for (const auto& v : d.as_vpolytope()->vertices) fs.push_back(g.functional_to_frame(d.chart().lift(v)));
      const Vec ref = g.coords(dual_reference(world_facets(d), x0));
      return DualDomain{ConvexDomain::hdomain(std::move(fs), ref, g, name), provenance};
    }
    case RepKind::HDomain: return dual_complement_h(d);
    case RepKind::Ellipsoid: {
      const Mat f = d.chart().frame();
      const Mat qw = f.transpose() * d.quadric() * f;
      const Mat gi = g.inverse_frame();
      const Mat qd = gi.transpose() * qw.inverse() * gi;
      const Vec inside = g.coords(Vec(-qw * x0));
      return DualDomain{ellipsoid_from_quadric(qd, inside, g, name), provenance};
    }
  }
  raise(ErrorCode::Representation, "dual_complement: unknown representation");
}

DualDomain dual_complement_h(const ConvexDomain& d) {
  if (d.kind() != RepKind::HDomain) raise(ErrorCode::Representation, "dual_complement_h: domain is not an H-domain");
  require_valid(d);
  const Vec x0 = d.chart().lift(d.reference());
  const Chart g = dual_chart(x0);
  const auto facets = world_facets(d);
  std::vector<Vec> verts;
  for (const auto& f : facets) verts.push_back(g.coords(f));
  const Vec ref = g.coords(dual_reference(facets, x0));
  return DualDomain{ConvexDomain::vpolytope(std::move(verts), ref, g, d.name() + "*"),
                    "dual complement of " + d.name()};
}

Functional tube_separator(const Tube& t, const CVec& z) {
  if (!t.base().is_polyhedral()) raise(ErrorCode::Representation, "tube_separator: base has no functional family");
  CVec h(z.size() + 1);
  h.head(z.size()) = z;
  h(z.size()) = 1.0;
  const auto& fs = t.base().halfspaces();
  std::vector<Complex> vals;
  for (const auto& f : fs) vals.push_back((complexify(f).transpose() * h)(0));
  const CMat frame = t.chart().frame().cast<Complex>();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i; j < fs.size(); ++j) {
      if ((vals[i] * std::conj(vals[j])).real() > 0) continue;
      CVec xi;
      if (i == j) {
        xi = complexify(fs[i]);
      } else {
        xi = vals[j] * complexify(fs[i]) - vals[i] * complexify(fs[j]);
      }
      return Functional(CVec(frame.transpose() * xi), ScalarKind::Complex);
    }
  }
  raise(ErrorCode::InsideTube, "tube_separator: point is inside the tube");
}

Functional tube_separator(const Tube& t, const HPoint& z) { return tube_separator(t, t.chart().complex_coords(z)); }

Complex evaluate(const Tube& t, const Functional& xi, const CVec& z) {
  return pairing(xi.coords(), t.chart().lift(z));
}

namespace {

struct AnnihilatorPlane {
  CVec particular;               // dual chart point
  std::vector<CVec> basis;       // orthonormal complex directions
};

struct GaugeObjective {
  const Tube* dual_tube;
  const AnnihilatorPlane* plane;

  CVec point(const double* s) const {
    CVec zeta = plane->particular;
    for (std::size_t k = 0; k < plane->basis.size(); ++k) {
      zeta += Complex(s[2 * k], s[2 * k + 1]) * plane->basis[k];
    }
    return zeta;
  }
  double operator()(const double* s) const { return tube_gauge(*dual_tube, point(s)); }
};

double gsl_objective(const gsl_vector* v, void* params) {
  const auto* obj = static_cast<const GaugeObjective*>(params);
  return (*obj)(v->data);
}

std::vector<double> minimize(const GaugeObjective& obj, std::vector<double> start, double step) {
  const std::size_t dim = start.size();
  gsl_multimin_function fn{&gsl_objective, dim, const_cast<GaugeObjective*>(&obj)};
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* ss = gsl_vector_alloc(dim);
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  for (int restart = 0; restart < 4; ++restart) {
    for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x, i, start[i]);
    gsl_vector_set_all(ss, step);
    gsl_multimin_fminimizer_set(m, &fn, x, ss);
    for (int it = 0; it < 5000; ++it) {
      if (gsl_multimin_fminimizer_iterate(m) != 0) break;
      if (gsl_multimin_fminimizer_size(m) < 1e-13) break;
    }
    for (std::size_t i = 0; i < dim; ++i) start[i] = gsl_vector_get(m->x, i);
    step *= 0.01;
  }
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return start;
}

}  // namespace

TangentSetSample tangent_set_sample(const Tube& t, const CVec& a, int n_samples, std::uint64_t seed, double band) {
  const BoundaryClass cls = boundary_classify(t, a, band);
  if (cls != BoundaryClass::RealBoundary && cls != BoundaryClass::ComplexBoundary) {
    raise(ErrorCode::NotBoundary, "tangent_set_sample: point is not on the tube boundary");
  }
  const DualDomain dual = dual_complement(t.base());
  const Tube dual_tube(dual.domain);
  const Chart& g = dual.domain.chart();
  const int n = t.dimension();

  // ann(a) in dual chart coordinates: r . (zeta, 1) = 0 with r = G^{-T} a~
  const CVec a_lift = t.chart().lift(a);
  const CVec r = g.inverse_frame().cast<Complex>().transpose() * a_lift;
  const CVec rh = r.head(n);
  TangentSetSample out;
  if (rh.norm() <= 1e-14 * r.norm()) return out;
  AnnihilatorPlane plane;
  plane.particular = -r(n) * rh.conjugate() / rh.squaredNorm();
  if (n > 1) {
    CMat row(1, n);
    row.row(0) = rh.transpose();
    Eigen::JacobiSVD<CMat> svd(row, Eigen::ComputeFullV);
    for (int k = 1; k < n; ++k) plane.basis.push_back(svd.matrixV().col(k));
  }
  const GaugeObjective obj{&dual_tube, &plane};
  const std::size_t dim = 2 * plane.basis.size();

  std::vector<double> best(dim, 0.0);
  if (dim > 0) {
    const CVec diff = complexify(dual.domain.reference()) - plane.particular;
    for (std::size_t k = 0; k < plane.basis.size(); ++k) {
      const Complex c = plane.basis[k].dot(diff);
      best[2 * k] = c.real();
      best[2 * k + 1] = c.imag();
    }
    const double extent = bounding_box(dual.domain).diameter();
    best = minimize(obj, best, 0.25 * extent);
  }
  out.min_gauge = obj(best.data());
  const double threshold = std::max(out.min_gauge, 1.0) + 1e-13;
  if (out.min_gauge > 1.0 + 1e-6) return out;

  std::vector<CVec> pts{obj.point(best.data())};
  Stream rng(seed, 0);
  for (int i = 1; i < n_samples && dim > 0; ++i) {
    std::vector<double> dir(dim);
    double norm = 0;
    for (auto& c : dir) {
      c = rng.normal();
      norm += c * c;
    }
    norm = std::sqrt(norm);
    for (auto& c : dir) c /= norm;
    auto at = [&](double step) {
      std::vector<double> s(best);
      for (std::size_t k = 0; k < dim; ++k) s[k] += step * dir[k];
      return s;
    };
    double lo = 0.0;
    double hi = 1e-12;
    while (hi < 1e6 && obj(at(hi).data()) <= threshold) {
      lo = hi;
      hi *= 2.0;
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (obj(at(mid).data()) <= threshold ? lo : hi) = mid;
    }
    const double frac = (i % 2 == 0) ? 1.0 : rng.uniform();
    pts.push_back(obj.point(at(lo * frac).data()));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) out.diameter = std::max(out.diameter, (pts[i] - pts[j]).norm());
    out.samples.emplace_back(g.lift(pts[i]), ScalarKind::Complex);
  }
  return out;
}

}  // namespace etube
