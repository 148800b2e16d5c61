#include "etube/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "etube/format.hpp"

namespace etube {

namespace {

Vec random_unit(Stream& rng, int n) {
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
  } while (v.norm() == 0.0);
  return v.normalized();
}

CVec random_complex(Stream& rng, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v;
}

double rel_norm(const CVec& v) { return std::max(1.0, v.norm()); }

// |xi . z~| / (|xi| |z~|) in the chart frame.
double relative_value(const CVec& xi_frame, const CVec& z) {
  CVec h(z.size() + 1);
  h.head(z.size()) = z;
  h(z.size()) = 1.0;
  return std::abs((xi_frame.transpose() * h)(0)) / (xi_frame.norm() * h.norm());
}

// Hermitian projection of w onto {a . w + c = 0}; nullopt when the kernel is
// the hyperplane at infinity.
std::optional<CVec> project_to_kernel(const CVec& xi_frame, const CVec& w) {
  const int n = static_cast<int>(w.size());
  const CVec a = xi_frame.head(n);
  if (a.norm() <= 1e-14 * xi_frame.norm()) return std::nullopt;
  const Complex r = (a.transpose() * w)(0) + xi_frame(n);
  return CVec(w - r * a.conjugate() / a.squaredNorm());
}

CVec world_to_frame_functional(const Chart& c, const CVec& world) {
  return c.inverse_frame().cast<Complex>().transpose() * world;
}

std::string describe(const CVec& z) {
  std::string s = "(";
  for (int i = 0; i < z.size(); ++i) {
    if (i > 0) s += ",";
    s += format_complex(z(i));
  }
  return s + ")";
}

template <class F>
CVec draw_exterior(const Tube& t, Stream& rng, std::size_t& skipped, F&& accept) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const CVec z = sample_box_point(t, rng);
    if (in_boundary_band(t, z)) {
      ++skipped;
      continue;
    }
    if (accept(z)) return z;
  }
  raise(ErrorCode::Degenerate, "no exterior point found in the sampling box");
}

}  // namespace

Vec sample_domain_point(const ConvexDomain& d, Stream& rng) {
  const Box b = bounding_box(d);
  Vec x(d.dimension());
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    for (int i = 0; i < x.size(); ++i) x(i) = rng.uniform(b.lo(i), b.hi(i));
    if (contains(d, x)) return x;
  }
  raise(ErrorCode::Degenerate, "sample_domain_point: rejection sampling failed");
}

CVec sample_tube_point(const Tube& t, Stream& rng) {
  const Vec x = sample_domain_point(t.base(), rng);
  const Vec y = random_unit(rng, t.dimension());
  const auto c = clip_params(t.base(), x, y);
  const double r = rng.uniform();
  if (!c) return complexify(x);
  const double s = r * std::sqrt(-c->first * c->second);
  CVec z = complexify(x);
  z.imag() = s * y;
  return z;
}

CVec sample_box_point(const Tube& t, Stream& rng, double margin) {
  const Box b = bounding_box(t.base());
  const double radius = 0.5 * b.diameter() * (1.0 + margin);
  CVec z(t.dimension());
  for (int i = 0; i < z.size(); ++i) {
    const double w = b.hi(i) - b.lo(i);
    const double re = rng.uniform(b.lo(i) - margin * w, b.hi(i) + margin * w);
    z(i) = Complex(re, rng.uniform(-radius, radius));
  }
  return z;
}

bool in_boundary_band(const Tube& t, const CVec& z, double band) {
  const Vec x = z.real();
  const double g = gauge(t.base(), x);
  if (is_real_chart_point(z)) return std::abs(g - 1.0) < band;
  if (std::abs(g - 1.0) < band && z.imag().norm() < band * rel_norm(z)) return true;
  const auto c = clip_params(t.base(), x, z.imag());
  return c && std::abs(1.0 / (-c->first * c->second) - 1.0) < band;
}

VerifierReport verify_linear_convexity(const Tube& t, const LinearConvexityOptions& opt) {
  VerifierReport rep;
  rep.name = opt.flip_separator ? "linear_convexity(flipped separator)" : "linear_convexity";
  rep.seed = opt.seed;
  rep.tolerance = opt.tolerance;
  const ConvexDomain& d = t.base();
  if (!d.is_polyhedral()) raise(ErrorCode::Representation, "verify_linear_convexity: base is not polyhedral");

  try {
    tube_separator(t, complexify(d.reference()));
    rep.violation("harness: interior point did not raise InsideTube");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsideTube) throw;
    rep.notes.push_back("harness: interior point raised InsideTube");
  }

  const int n = t.dimension();
  double min_kernel_value = 1.0;
  for (std::size_t k = 0; k < opt.n_exterior; ++k) {
    Stream rng(opt.seed, k);
    const CVec z = draw_exterior(t, rng, rep.skipped, [&](const CVec& c) { return !tube_contains(t, c); });
    CVec xi;
    if (opt.flip_separator) {
      CVec h(n + 1);
      h.head(n) = z;
      h(n) = 1.0;
      const auto& fs = d.halfspaces();
      for (std::size_t i = 0; i < fs.size() && xi.size() == 0; ++i) {
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
          const Complex fi = (complexify(fs[i]).transpose() * h)(0);
          const Complex fj = (complexify(fs[j]).transpose() * h)(0);
          if ((fi * std::conj(fj)).real() > 0) continue;
          xi = fj * complexify(fs[i]) + fi * complexify(fs[j]);
          break;
        }
      }
      if (xi.size() == 0) xi = world_to_frame_functional(t.chart(), tube_separator(t, z).coords());
    } else {
      xi = world_to_frame_functional(t.chart(), tube_separator(t, z).coords());
    }
    ++rep.samples_run;
    const double at_z = relative_value(xi, z);
    rep.error(at_z);
    if (at_z > rep.tolerance) {
      rep.violation("xi(z) = " + format_double(at_z) + " at z = " + describe(z));
      continue;
    }
    for (std::size_t m = 0; m < opt.n_kernel_samples; ++m) {
      const CVec w = sample_tube_point(t, rng);
      const double val = relative_value(xi, w);
      min_kernel_value = std::min(min_kernel_value, val);
      if (val <= 1e-14) {
        rep.violation("xi vanishes at tube point " + describe(w) + " for z = " + describe(z));
        break;
      }
      const auto p = project_to_kernel(xi, w);
      if (p && tube_membership(t, *p, kVerifierBand) == Membership::Inside) {
        rep.violation("kernel point " + describe(*p) + " inside the tube for z = " + describe(z));
        break;
      }
    }
  }
  rep.notes.push_back("min relative |xi| on tube samples: " + format_double(min_kernel_value));
  return rep;
}

Complex SliceRaster::parameter(int i, int j) const {
  return Complex(x0 + (j + 0.5) * cell, y0 + (i + 0.5) * cell);
}

bool SliceRaster::touches_frame() const {
  const int r = resolution;
  for (int k = 0; k < r; ++k) {
    if (at(0, k) || at(r - 1, k) || at(k, 0) || at(k, r - 1)) return true;
  }
  return false;
}

namespace {

// Bounding box of {zeta : z1 + zeta d in the box enclosing D^e}.
std::optional<ParameterWindow> parameter_window(const Tube& t, const CVec& z1, const CVec& d) {
  const Box b = bounding_box(t.base());
  const double radius = 0.5 * b.diameter() * 1.01;
  struct Half {
    double a, b, c;  // a s + b t <= c
  };
  std::vector<Half> hs;
  for (int j = 0; j < z1.size(); ++j) {
    const double re = z1(j).real(), im = z1(j).imag();
    const double dr = d(j).real(), di = d(j).imag();
    const double pad = 0.01 * (b.hi(j) - b.lo(j)) + 1e-12;
    hs.push_back({dr, -di, b.hi(j) + pad - re});
    hs.push_back({-dr, di, re - b.lo(j) + pad});
    hs.push_back({di, dr, radius - im});
    hs.push_back({-di, -dr, radius + im});
  }
  double lo_s = 1e300, hi_s = -1e300, lo_t = 1e300, hi_t = -1e300;
  for (std::size_t p = 0; p < hs.size(); ++p) {
    for (std::size_t q = p + 1; q < hs.size(); ++q) {
      const double det = hs[p].a * hs[q].b - hs[p].b * hs[q].a;
      const double scale = std::hypot(hs[p].a, hs[p].b) * std::hypot(hs[q].a, hs[q].b);
      if (std::abs(det) <= 1e-12 * scale) continue;
      const double s = (hs[p].c * hs[q].b - hs[p].b * hs[q].c) / det;
      const double tt = (hs[p].a * hs[q].c - hs[p].c * hs[q].a) / det;
      const bool ok = std::all_of(hs.begin(), hs.end(), [&](const Half& h) {
        return h.a * s + h.b * tt <= h.c + 1e-9 * (std::hypot(h.a, h.b) * std::hypot(s, tt) + std::abs(h.c) + 1.0);
      });
      if (!ok) continue;
      lo_s = std::min(lo_s, s);
      hi_s = std::max(hi_s, s);
      lo_t = std::min(lo_t, tt);
      hi_t = std::max(hi_t, tt);
    }
  }
  if (lo_s > hi_s) return std::nullopt;
  return ParameterWindow{0.5 * (lo_s + hi_s), 0.5 * (lo_t + hi_t), std::max(hi_s - lo_s, hi_t - lo_t)};
}

SliceRaster fill(const CVec& z1, const CVec& d, const ParameterWindow& w, int resolution, const MembershipFn& member) {
  SliceRaster r;
  r.origin = z1;
  r.direction = d;
  r.resolution = resolution;
  r.cell = w.side / resolution;
  r.x0 = w.cx - 0.5 * w.side;
  r.y0 = w.cy - 0.5 * w.side;
  r.inside.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      r.inside[static_cast<std::size_t>(i) * resolution + j] = member(r.point(i, j)) ? 1 : 0;
    }
  }
  r.saddle.assign(static_cast<std::size_t>(resolution - 1) * (resolution - 1), 0);
  for (int i = 0; i + 1 < resolution; ++i) {
    for (int j = 0; j + 1 < resolution; ++j) {
      const bool a = r.at(i, j), b = r.at(i, j + 1), c = r.at(i + 1, j), e = r.at(i + 1, j + 1);
      if (a != e || b != c || a == b) continue;
      const Complex corner(r.x0 + (j + 1) * r.cell, r.y0 + (i + 1) * r.cell);
      r.saddle[static_cast<std::size_t>(i) * (resolution - 1) + j] = member(z1 + corner * d) ? 1 : -1;
    }
  }
  return r;
}

// Whether the diagonal step (i,j) -> (i+di,j+dj) links cells of this value.
bool diagonal_link(const SliceRaster& r, bool value, int i, int j, int di, int dj) {
  if (r.saddle.empty()) return !value;
  const int bi = std::min(i, i + di), bj = std::min(j, j + dj);
  const int s = r.saddle[static_cast<std::size_t>(bi) * (r.resolution - 1) + bj];
  return s == (value ? 1 : -1);
}

int count_components(const SliceRaster& r, bool value) {
  const int n = r.resolution;
  std::vector<std::uint8_t> seen(r.inside.size(), 0);
  std::vector<int> stack;
  int components = 0;
  for (int start = 0; start < n * n; ++start) {
    if (seen[start] || (r.inside[start] != 0) != value) continue;
    ++components;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      const int i = c / n, j = c % n;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
          if (di != 0 && dj != 0 && !diagonal_link(r, value, i, j, di, dj)) continue;
          const int nb = ii * n + jj;
          if (seen[nb] || (r.inside[nb] != 0) != value) continue;
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
  }
  return components;
}

}  // namespace

ParameterWindow fit_slice_window(const Tube& t, const CVec& z1, const CVec& d, const MembershipFn& member) {
  if (d.norm() == 0.0) raise(ErrorCode::ZeroDirection, "fit_slice_window: zero direction");
  const MembershipFn in = member ? member : MembershipFn([&t](const CVec& z) { return tube_contains(t, z); });
  const auto box = parameter_window(t, z1, d);
  if (!box) raise(ErrorCode::EmptySlice, "fit_slice_window: line misses the tube's box");
  constexpr int kCoarse = 64;
  const SliceRaster coarse = fill(z1, d, *box, kCoarse, in);
  int lo_i = kCoarse, hi_i = -1, lo_j = kCoarse, hi_j = -1;
  for (int i = 0; i < kCoarse; ++i) {
    for (int j = 0; j < kCoarse; ++j) {
      if (!coarse.at(i, j)) continue;
      lo_i = std::min(lo_i, i);
      hi_i = std::max(hi_i, i);
      lo_j = std::min(lo_j, j);
      hi_j = std::max(hi_j, j);
    }
  }
  if (hi_i < 0) return *box;
  const double xa = coarse.x0 + (lo_j - 1) * coarse.cell, xb = coarse.x0 + (hi_j + 2) * coarse.cell;
  const double ya = coarse.y0 + (lo_i - 1) * coarse.cell, yb = coarse.y0 + (hi_i + 2) * coarse.cell;
  return ParameterWindow{0.5 * (xa + xb), 0.5 * (ya + yb), 1.2 * std::max(xb - xa, yb - ya)};
}

SliceRaster rasterize_slice(const Tube& t, const CVec& z1, const CVec& d, int resolution, const MembershipFn& member) {
  if (resolution < 8) raise(ErrorCode::InvalidArgument, "rasterize_slice: resolution too small");
  const MembershipFn in = member ? member : MembershipFn([&t](const CVec& z) { return tube_contains(t, z); });
  ParameterWindow w = fit_slice_window(t, z1, d, in);
  for (int attempt = 0; attempt < 5; ++attempt) {
    SliceRaster r = fill(z1, d, w, resolution, in);
    if (!r.touches_frame()) return r;
    w.side *= 1.5;
  }
  raise(ErrorCode::Resolution, "rasterize_slice: slice region touches the window frame");
}

RasterTopology raster_topology(const SliceRaster& r) {
  return RasterTopology{count_components(r, true), count_components(r, false)};
}

VerifierReport verify_c_convexity(const Tube& t, const CConvexityOptions& opt) {
  VerifierReport rep;
  rep.name = "c_convexity";
  rep.seed = opt.seed;
  const int n = t.dimension();
  for (std::size_t k = 0; k < opt.n_lines; ++k) {
    Stream rng(opt.seed, k);
    const bool two_points = rng.uniform() < 0.7;
    const CVec z1 = sample_tube_point(t, rng);
    CVec d;
    do {
      d = two_points ? CVec(sample_tube_point(t, rng) - z1) : random_complex(rng, n);
    } while (d.norm() < 1e-9);
    const SliceRaster r = rasterize_slice(t, z1, d, opt.resolution, opt.member);
    const RasterTopology topo = raster_topology(r);
    if (topo.region_components == 0) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples_run;
    std::ostringstream line;
    line << "line " << k << " through " << describe(z1) << " direction " << describe(d) << ": ";
    if (topo.region_components > 1) {
      rep.violation(line.str() + "region disconnected (" + std::to_string(topo.region_components) + " components)");
    }
    if (topo.complement_components > 1) {
      rep.violation(line.str() + "complement disconnected (" + std::to_string(topo.complement_components) +
                    " components)");
    }
  }
  rep.notes.push_back("resolution: " + std::to_string(opt.resolution));
  return rep;
}

VerifierReport verify_duality_identity(const ConvexDomain& d, std::size_t n_samples, std::uint64_t seed,
                                       double tolerance) {
  if (!d.is_polyhedral()) raise(ErrorCode::Representation, "verify_duality_identity: domain is not polyhedral");
  VerifierReport rep;
  rep.name = "duality_identity";
  rep.seed = seed;
  rep.tolerance = tolerance;
  const Tube t(d);
  const DualDomain dual = dual_complement(d);
  const Tube dt(dual.domain);
  const Chart& g = dual.domain.chart();
  constexpr int kKernelPoints = 8;

  std::size_t forward = 0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    Stream rng(seed, k);
    const CVec zeta = sample_tube_point(dt, rng);
    if (in_boundary_band(dt, zeta)) {
      ++rep.skipped;
      continue;
    }
    const CVec xi = world_to_frame_functional(d.chart(), g.lift(zeta));
    ++rep.samples_run;
    ++forward;
    for (int m = 0; m < kKernelPoints; ++m) {
      const auto p = project_to_kernel(xi, sample_tube_point(t, rng));
      if (p && tube_membership(t, *p, kVerifierBand) == Membership::Inside) {
        rep.violation("kernel of dual tube point " + describe(zeta) + " meets the tube at " + describe(*p));
        break;
      }
    }
  }

  const auto& hs = dual.domain.halfspaces();
  const Mat gf = g.frame();
  for (std::size_t k = 0; k < n_samples; ++k) {
    Stream rng(seed, n_samples + k);
    const CVec z = draw_exterior(t, rng, rep.skipped, [&](const CVec& c) { return !tube_contains(t, c); });
    const CVec xi = gf.cast<Complex>() * tube_separator(t, z).coords();
    std::vector<Complex> vals;
    for (const auto& h : hs) vals.push_back((complexify(h).transpose() * xi)(0) / (h.norm() * xi.norm()));
    double worst = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      for (std::size_t j = i; j < vals.size(); ++j) worst = std::min(worst, (vals[i] * std::conj(vals[j])).real());
    }
    ++rep.samples_run;
    rep.error(-worst);
    if (worst < -rep.tolerance) {
      rep.violation("separator of " + describe(z) + " is outside the closed dual tube (" + format_double(worst) + ")");
    }
  }
  rep.notes.push_back("dual tube samples: " + std::to_string(forward));
  return rep;
}

VerifierReport verify_metric_consistency(const ConvexDomain& d, std::size_t n_pairs, std::uint64_t seed,
                                         double tolerance) {
  VerifierReport rep;
  rep.name = "metric_consistency";
  rep.seed = seed;
  rep.tolerance = tolerance;
  const Tube t(d);
  double u_error = 0;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    Stream rng(seed, k);
    const Vec x = sample_domain_point(d, rng);
    const Vec y = sample_domain_point(d, rng);
    const CVec z = sample_tube_point(t, rng);
    if (std::abs(gauge(d, x) - 1.0) < kVerifierBand || std::abs(gauge(d, y) - 1.0) < kVerifierBand ||
        is_real_chart_point(z) || in_boundary_band(t, z)) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples_run;

    const double h = hilbert_distance(d, x, y);
    const double kr = slice_poincare_distance(t, x, y);
    const double kb = kobayashi_supported(t, complexify(x), complexify(y));
    const double e_real = std::max(std::abs(h - kr), std::abs(h - kb)) / std::max(1.0, h);
    rep.error(e_real);
    if (e_real > rep.tolerance) {
      rep.violation("real pair (" + describe(complexify(x)) + ", " + describe(complexify(y)) +
                    "): hilbert " + format_double(h) + " vs slice poincare " + format_double(kr));
    }

    const SliceDisk s = slice_disk(t, z);
    const double radius = 0.999 * std::sqrt(rng.uniform());
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    const bool real_partner = rng.uniform() < 0.25;
    const Complex omega = real_partner ? Complex(radius * std::cos(angle), 0.0) : std::polar(radius, angle);
    const CVec w = s.point(s.to_unit_disk.inverse()(omega));
    const double k1 = kobayashi_supported(t, z, w);
    const CVec ea = complexify(line_point(s.line, s.interval.a));
    const CVec eb = complexify(line_point(s.line, s.interval.b));
    const CVec span = eb - ea;
    auto tau = [&](const CVec& p) { return span.dot(CVec(p - ea)) / span.squaredNorm(); };
    const Moebius m = Moebius::disk_shift(rng.uniform(-0.9, 0.9)) * Moebius::interval_to_unit(0.0, 1.0);
    const double k2 = poincare_distance(m(tau(z)), m(tau(w)));
    const double e_slice = std::abs(k1 - k2) / std::max(1.0, k1);
    rep.error(e_slice);
    if (e_slice > rep.tolerance) {
      rep.violation("slice pair (" + describe(z) + ", " + describe(w) + "): normalizations give " +
                    format_double(k1) + " and " + format_double(k2));
    }

    const CoreDistance cd = core_distance(t, z);
    const double u = u_value(t, z);
    const double e_u = std::max(std::abs(u - 2.0 * std::atan(std::tanh(cd.via_foot))),
                                std::abs(cd.distance - cd.via_foot) / std::max(1.0, cd.via_foot));
    u_error = std::max(u_error, e_u);
    if (e_u > 1e-9) {
      rep.violation("u = phi fails at " + describe(z) + ": u " + format_double(u) + ", d " + format_double(cd.via_foot));
    }
  }
  rep.notes.push_back("max u = phi error: " + format_double(u_error) + " (tolerance 1e-09)");
  return rep;
}

VerifierReport verify_homeomorphism(const Tube& t, std::size_t n_samples,
                                    const std::vector<ProjectiveMap>& group_elements, std::uint64_t seed) {
  const ConvexDomain& d = t.base();
  for (std::size_t i = 0; i < group_elements.size(); ++i) {
    if (group_elements[i].size() != d.dimension() + 1 || !group_elements[i].is_real() ||
        !preserves(d, group_elements[i])) {
      raise(ErrorCode::GroupValidation, "group element " + std::to_string(i) + " does not preserve the domain");
    }
  }
  VerifierReport rep;
  rep.name = "homeomorphism";
  rep.seed = seed;
  rep.tolerance = 1e-8;
  double worst_conj = 0, worst_equi = 0, worst_foot = 0;
  auto check = [&](double err, double tol, const std::string& what) {
    rep.error(err);
    if (err > tol) rep.violation(what + " error " + format_double(err));
  };
  for (std::size_t k = 0; k < n_samples; ++k) {
    Stream rng(seed, k);
    const CVec z = sample_tube_point(t, rng);
    TangentVector r;
    r.base = sample_domain_point(d, rng);
    r.direction = random_unit(rng, d.dimension());
    r.magnitude = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, 4.0);
    if (r.magnitude == 0.0) r.direction = Vec::Zero(d.dimension());
    if (in_boundary_band(t, z) || std::abs(gauge(d, r.base) - 1.0) < kVerifierBand) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples_run;
    const std::string at = " at " + describe(z);

    const TangentVector v = to_tangent(t, z);
    const CVec back = from_tangent(t, v);
    check((back - z).norm() / rel_norm(z), 1e-8, "round trip z -> v -> z" + at);

    const TangentVector rv = to_tangent(t, from_tangent(t, r));
    const double e_rt = std::max({(rv.base - r.base).norm() / std::max(1.0, r.base.norm()),
                                  std::abs(rv.magnitude - r.magnitude) / std::max(1.0, r.magnitude),
                                  r.magnitude > 0 ? (rv.direction - r.direction).norm() : rv.direction.norm()});
    check(e_rt, 1e-8, "round trip v -> z -> v at base " + describe(complexify(r.base)));

    const TangentVector vc = to_tangent(t, CVec(z.conjugate()));
    const double e_conj = std::max({(vc.base - v.base).norm(), (vc.direction + v.direction).norm(),
                                    std::abs(vc.magnitude - v.magnitude)});
    worst_conj = std::max(worst_conj, e_conj);
    check(e_conj, 1e-10, "conjugation" + at);

    const CoreDistance cd = core_distance(t, z);
    const double e_foot = std::max({(cd.foot - v.base).norm() / std::max(1.0, v.base.norm()),
                                    std::abs(cd.via_foot - v.magnitude), std::abs(cd.distance - v.magnitude)}) /
                          std::max(1.0, v.magnitude);
    worst_foot = std::max(worst_foot, e_foot);
    check(e_foot, 1e-9, "foot consistency" + at);

    for (std::size_t gi = 0; gi < group_elements.size(); ++gi) {
      const ProjectiveMap& a = group_elements[gi];
      const TangentVector va = to_tangent(t, apply_in_chart(a, t.chart(), z));
      const Vec base = apply_in_chart(a, t.chart(), v.base);
      double e = (va.base - base).norm() / std::max(1.0, base.norm());
      e = std::max(e, std::abs(va.magnitude - v.magnitude) / std::max(1.0, v.magnitude));
      if (v.magnitude > 0) {
        const Vec dir = pushforward(a, t.chart(), v.base, v.direction).normalized();
        e = std::max(e, (va.direction - dir).norm());
      }
      worst_equi = std::max(worst_equi, e);
      check(e, 1e-9, "equivariance under element " + std::to_string(gi) + at);
    }
  }
  rep.notes.push_back("max conjugation error: " + format_double(worst_conj));
  rep.notes.push_back("max equivariance error: " + format_double(worst_equi));
  rep.notes.push_back("max foot error: " + format_double(worst_foot));
  return rep;
}

namespace {

void check_deltas(const std::vector<double>& deltas) {
  if (deltas.empty()) raise(ErrorCode::InvalidArgument, "deltas must not be empty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0 && deltas[i] < 1)) raise(ErrorCode::InvalidArgument, "deltas must lie in (0, 1)");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) raise(ErrorCode::InvalidArgument, "deltas must decrease strictly");
  }
}

int absorption(const Tube& t, const std::vector<Tube>& scaled, double last_delta, const CVec& z) {
  if (!tube_contains(t, z)) return -1;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    if (tube_contains(scaled[i], z)) return static_cast<int>(i);
  }
  double delta = last_delta;
  for (int i = static_cast<int>(scaled.size()); i < 4000; ++i) {
    delta *= 0.5;
    if (!(delta > 0)) break;
    if (tube_contains(Tube(scaled_copy(t.base(), delta)), z)) return i;
  }
  return -1;
}

}  // namespace

int absorption_index(const Tube& t, const std::vector<double>& deltas, const CVec& z) {
  check_deltas(deltas);
  std::vector<Tube> scaled;
  for (double delta : deltas) scaled.emplace_back(scaled_copy(t.base(), delta));
  return absorption(t, scaled, deltas.back(), z);
}

VerifierReport verify_exhaustion_monotone(const ConvexDomain& d, const std::vector<double>& deltas,
                                          std::size_t n_samples, std::uint64_t seed) {
  check_deltas(deltas);
  VerifierReport rep;
  rep.name = "exhaustion_monotone";
  rep.seed = seed;
  const Tube t(d);
  std::vector<Tube> scaled;
  for (double delta : deltas) scaled.emplace_back(scaled_copy(d, delta));
  int max_index = 0;
  std::size_t beyond = 0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    Stream rng(seed, k);
    const CVec z = sample_tube_point(t, rng);
    const CVec b = sample_box_point(t, rng);
    if (in_boundary_band(t, z) || in_boundary_band(t, b)) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples_run;
    for (const CVec* p : {&z, &b}) {
      bool prev = false;
      for (std::size_t i = 0; i <= scaled.size(); ++i) {
        const bool cur = i < scaled.size() ? tube_contains(scaled[i], *p) : tube_contains(t, *p);
        if (prev && !cur) {
          rep.violation("point " + describe(*p) + " leaves the scaled tubes at step " + std::to_string(i));
          break;
        }
        prev = cur;
      }
    }
    const int idx = absorption(t, scaled, deltas.back(), z);
    if (idx < 0) {
      rep.violation("tube point " + describe(z) + " is not absorbed");
      continue;
    }
    max_index = std::max(max_index, idx);
    if (idx >= static_cast<int>(deltas.size())) ++beyond;
  }
  rep.notes.push_back("max absorption index: " + std::to_string(max_index));
  rep.notes.push_back("absorbed past the given deltas: " + std::to_string(beyond));
  return rep;
}

}  // namespace etube
