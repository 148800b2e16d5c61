#include "etube/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "etube/complexify.hpp"
#include "etube/format.hpp"

namespace etube {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "linconv", "cconv", "duality", "metric", "homeo", "exhaust", "action"};
  return names;
}

MembershipFn punctured_membership(const Tube& t, double r) {
  const CVec x0 = complexify(t.base().reference());
  return [&t, x0, r](const CVec& z) { return tube_contains(t, z) && (z - x0).norm() > r; };
}

std::vector<VerifierReport> run_suite(const DomainSpec& spec, const std::string& suite, const SuiteOptions& opt) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    raise(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
  }
  const ConvexDomain& d = spec.domain;
  const Tube t(d);
  const bool all = suite == "all";
  auto unsupported = [&](const std::string& why) {
    raise(ErrorCode::UnsupportedConfiguration, "suite " + suite + ": " + why);
  };
  std::vector<VerifierReport> out;

  if (suite == "linconv" || (all && d.is_polyhedral())) {
    if (!d.is_polyhedral()) unsupported("the domain has no functional family");
    LinearConvexityOptions o;
    o.n_exterior = opt.samples;
    o.n_kernel_samples = std::min<std::size_t>(opt.samples, 100);
    o.seed = opt.seed;
    o.tolerance = opt.tolerance.value_or(1e-10);
    out.push_back(verify_linear_convexity(t, o));
  }
  if (suite == "cconv" || all) {
    CConvexityOptions o{opt.lines, opt.grid, opt.seed, {}};
    if (spec.control_puncture) o.member = punctured_membership(t, *spec.control_puncture);
    VerifierReport r = verify_c_convexity(t, o);
    if (spec.control_puncture) r.notes.push_back("control puncture radius " + format_double(*spec.control_puncture));
    out.push_back(std::move(r));
  }
  if (suite == "duality" || (all && d.is_polyhedral())) {
    if (!d.is_polyhedral()) unsupported("the domain has no functional family");
    out.push_back(verify_duality_identity(d, opt.samples, opt.seed, opt.tolerance.value_or(1e-12)));
  }
  if (suite == "metric" || all) {
    out.push_back(verify_metric_consistency(d, opt.samples, opt.seed, opt.tolerance.value_or(1e-10)));
  }
  if (suite == "homeo" || all) {
    out.push_back(verify_homeomorphism(t, opt.samples, spec.generators, opt.seed));
  }
  if (suite == "exhaust" || all) {
    out.push_back(verify_exhaustion_monotone(d, {0.5, 0.25, 0.1, 0.01}, opt.samples, opt.seed));
  }
  if (suite == "action" || (all && !spec.generators.empty())) {
    if (spec.generators.empty()) unsupported("the spec has no generators");
    out.push_back(check_free_action(ConvexRPManifold(d, spec.generators), 8));
  }
  for (auto& r : out) r.seed = opt.seed;
  return out;
}

SliceGrid slice_grid(const Tube& t, const CVec& p, const CVec& d, int resolution, double band) {
  if (resolution < 2) raise(ErrorCode::InvalidArgument, "slice_grid: resolution must be at least 2");
  const ParameterWindow w = fit_slice_window(t, p, d);
  const double half = std::max(std::abs(w.cx), std::abs(w.cy)) + 0.5 * w.side;
  SliceGrid g;
  g.resolution = resolution;
  g.cell = 2.0 * half / resolution;
  g.values.resize(static_cast<std::size_t>(resolution) * resolution);
  const int mid = resolution / 2;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const Complex zeta((j - mid) * g.cell, (mid - i) * g.cell);
      const CVec q = p + zeta * d;
      double v = -1.0;
      switch (boundary_classify(t, q, band)) {
        case BoundaryClass::Interior:
          try {
            v = u_value(t, q);
          } catch (const Error&) {
            v = -2.0;
          }
          break;
        case BoundaryClass::RealBoundary:
        case BoundaryClass::ComplexBoundary: v = -2.0; break;
        case BoundaryClass::Exterior: v = -1.0; break;
      }
      g.values[static_cast<std::size_t>(i) * resolution + j] = v;
    }
  }
  return g;
}

SliceGrid slice_grid(const Tube& t, const CVec& z, int resolution, double band) {
  if (is_real_chart_point(z)) raise(ErrorCode::RealPoint, "slice_grid: point is real; give a line");
  const RealLine line = chart_line(z.real(), z.imag());
  return slice_grid(t, z, complexify(line_direction(line)), resolution, band);
}

std::string encode_csv(const SliceGrid& g) {
  std::string out;
  for (int i = 0; i < g.resolution; ++i) {
    for (int j = 0; j < g.resolution; ++j) {
      if (j > 0) out += ",";
      out += format_double(g.values[static_cast<std::size_t>(i) * g.resolution + j]);
    }
    out += "\n";
  }
  return out;
}

std::string encode_pgm(const SliceGrid& g) {
  std::string out = "P5\n" + std::to_string(g.resolution) + " " + std::to_string(g.resolution) + "\n255\n";
  for (double v : g.values) {
    int gray = 255;
    if (v >= 0.0) gray = std::min(254, static_cast<int>(std::floor(v / (0.5 * std::numbers::pi) * 255.0)));
    out.push_back(static_cast<char>(gray));
  }
  return out;
}

namespace {

std::string signed_number(double x) { return (std::signbit(x) && x != 0.0 ? "-" : "+") + format_double(std::abs(x)); }

template <class F>
std::string join(int n, F&& item) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i ? "," : "") + item(i);
  return s;
}

}  // namespace

std::string format_tangent(const TangentVector& v) {
  const int n = static_cast<int>(v.base.size());
  return join(n, [&](int i) { return format_double(v.base(i)); }) + ";" +
         join(n, [&](int i) { return signed_number(v.direction(i)); }) + ";" + format_double(v.magnitude);
}

TangentVector parse_tangent(const std::string& s, int n) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto semi = s.find(';', start);
    parts.push_back(s.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (parts.size() != 3) raise(ErrorCode::Parse, "tangent vector must read 'base;direction;magnitude'");
  const auto base = parse_real_list(parts[0]);
  const auto dir = parse_real_list(parts[1]);
  const auto mag = parse_real_list(parts[2]);
  if (static_cast<int>(base.size()) != n || static_cast<int>(dir.size()) != n || mag.size() != 1) {
    raise(ErrorCode::Parse, "tangent vector has the wrong dimension");
  }
  TangentVector v;
  v.base = Eigen::Map<const Eigen::VectorXd>(base.data(), n);
  v.direction = Eigen::Map<const Eigen::VectorXd>(dir.data(), n);
  v.magnitude = mag[0];
  if (v.magnitude < 0) raise(ErrorCode::Parse, "tangent magnitude must be non-negative");
  if (v.magnitude > 0) {
    if (!(v.direction.norm() > 0)) raise(ErrorCode::ZeroDirection, "tangent direction is zero");
    v.direction.normalize();
  }
  return v;
}

std::string format_complex_vector(const CVec& z) {
  return join(static_cast<int>(z.size()), [&](int i) { return format_complex(z(i)); });
}

}  // namespace etube
