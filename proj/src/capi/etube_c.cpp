#include "etube/etube.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "etube/duality.hpp"
#include "etube/format.hpp"
#include "etube/suite.hpp"

struct etube_spec {
  etube::DomainSpec spec;
  etube::Tube tube;

  explicit etube_spec(etube::DomainSpec s) : spec(std::move(s)), tube(spec.domain) {}
};

struct etube_report {
  std::vector<etube::VerifierReport> reports;
};

namespace {

using namespace etube;

thread_local std::string g_last_error;

template <class F>
etube_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ETUBE_OK;
  } catch (const Error& e) {
    g_last_error = std::string(error_code_name(e.code())) + ": " + e.what();
    return static_cast<etube_status>(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ETUBE_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) raise(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size());
  p[s.size()] = '\0';
  return p;
}

Vec real_in(const double* x, int n) {
  require(x, "point");
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = x[i];
  return v;
}

CVec complex_in(const double* z, int n) {
  require(z, "point");
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(z[2 * i], z[2 * i + 1]);
  return v;
}

void complex_out(const CVec& z, double* out) {
  require(out, "output");
  for (int i = 0; i < z.size(); ++i) {
    out[2 * i] = z(i).real();
    out[2 * i + 1] = z(i).imag();
  }
}

CVec parse_point(const etube_spec* s, const char* text) {
  require(text, "point text");
  const auto vals = parse_complex_list(text);
  const int n = s->spec.domain.dimension();
  if (static_cast<int>(vals.size()) != n) {
    raise(ErrorCode::Parse, "point '" + std::string(text) + "' needs " + std::to_string(n) + " coordinates");
  }
  CVec z(n);
  for (int i = 0; i < n; ++i) z(i) = vals[static_cast<std::size_t>(i)];
  return z;
}

}  // namespace

extern "C" {

const char* etube_last_error(void) { return g_last_error.c_str(); }

const char* etube_status_name(etube_status s) {
  if (s == ETUBE_OK) return "Ok";
  if (s == ETUBE_INTERNAL) return "InternalError";
  return error_code_name(static_cast<ErrorCode>(s));
}

void etube_free(void* p) { std::free(p); }

void etube_check_options_default(etube_check_options* opt) {
  if (opt == nullptr) return;
  const SuiteOptions d;
  opt->samples = d.samples;
  opt->lines = d.lines;
  opt->grid = d.grid;
  opt->tolerance = 0.0;
  opt->seed = d.seed;
}

etube_status etube_spec_parse(const char* text, etube_spec** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new etube_spec(parse_domain_spec(text));
  });
}

etube_status etube_spec_load(const char* path, etube_spec** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new etube_spec(load_domain_spec(path));
  });
}

void etube_spec_free(etube_spec* spec) { delete spec; }

int etube_spec_dimension(const etube_spec* spec) { return spec ? spec->spec.domain.dimension() : 0; }

etube_status etube_spec_write(const etube_spec* spec, char** out_text) {
  return guarded([&] {
    require(spec, "spec");
    require(out_text, "out");
    *out_text = copy_out(write_domain_spec(spec->spec.domain, spec->spec.generators));
  });
}

etube_status etube_spec_dual(const etube_spec* spec, etube_spec** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    DualDomain dual = dual_complement(spec->spec.domain);
    *out = new etube_spec(DomainSpec{std::move(dual.domain), {}, std::nullopt});
  });
}

etube_status etube_contains(const etube_spec* spec, const double* x, int* out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = contains(spec->spec.domain, real_in(x, spec->spec.domain.dimension())) ? 1 : 0;
  });
}

etube_status etube_tube_contains(const etube_spec* spec, const double* z, int* out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = tube_contains(spec->tube, complex_in(z, spec->spec.domain.dimension())) ? 1 : 0;
  });
}

etube_status etube_hilbert_distance(const etube_spec* spec, const double* x, const double* y, double* out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    const int n = spec->spec.domain.dimension();
    *out = hilbert_distance(spec->spec.domain, real_in(x, n), real_in(y, n));
  });
}

etube_status etube_kobayashi_distance(const etube_spec* spec, const double* z, const double* w, double* out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    const int n = spec->spec.domain.dimension();
    *out = kobayashi_supported(spec->tube, complex_in(z, n), complex_in(w, n));
  });
}

etube_status etube_u_value(const etube_spec* spec, const double* z, double* out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = u_value(spec->tube, complex_in(z, spec->spec.domain.dimension()));
  });
}

etube_status etube_core_distance(const etube_spec* spec, const double* z, double* out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = core_distance(spec->tube, complex_in(z, spec->spec.domain.dimension())).distance;
  });
}

etube_status etube_to_tangent(const etube_spec* spec, const double* z, double* base, double* direction,
                              double* magnitude) {
  return guarded([&] {
    require(spec, "spec");
    require(base, "base");
    require(direction, "direction");
    require(magnitude, "magnitude");
    const TangentVector v = to_tangent(spec->tube, complex_in(z, spec->spec.domain.dimension()));
    for (int i = 0; i < v.base.size(); ++i) {
      base[i] = v.base(i);
      direction[i] = v.direction(i);
    }
    *magnitude = v.magnitude;
  });
}

etube_status etube_from_tangent(const etube_spec* spec, const double* base, const double* direction,
                                double magnitude, double* z) {
  return guarded([&] {
    require(spec, "spec");
    const int n = spec->spec.domain.dimension();
    TangentVector v;
    v.base = real_in(base, n);
    v.direction = real_in(direction, n);
    v.magnitude = magnitude;
    if (magnitude > 0 && v.direction.norm() > 0) v.direction.normalize();
    complex_out(from_tangent(spec->tube, v), z);
  });
}

etube_status etube_tube_separator(const etube_spec* spec, const double* z, double* xi) {
  return guarded([&] {
    require(spec, "spec");
    complex_out(tube_separator(spec->tube, complex_in(z, spec->spec.domain.dimension())).coords(), xi);
  });
}

etube_status etube_check(const etube_spec* spec, const char* suite, const etube_check_options* opt,
                         etube_report** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    SuiteOptions o;
    if (opt != nullptr) {
      o.samples = opt->samples;
      o.lines = opt->lines;
      o.grid = opt->grid;
      if (opt->tolerance > 0) o.tolerance = opt->tolerance;
      o.seed = opt->seed;
    }
    auto r = std::make_unique<etube_report>();
    r->reports = run_suite(spec->spec, suite ? suite : "all", o);
    *out = r.release();
  });
}

int etube_report_passed(const etube_report* r) {
  if (r == nullptr) return 0;
  for (const auto& x : r->reports) {
    if (!x.passed()) return 0;
  }
  return 1;
}

size_t etube_report_count(const etube_report* r) { return r ? r->reports.size() : 0; }

etube_status etube_report_text(const etube_report* r, char** out_text) {
  return guarded([&] {
    require(r, "report");
    require(out_text, "out");
    std::string s;
    for (std::size_t i = 0; i < r->reports.size(); ++i) s += (i ? "\n" : "") + to_text(r->reports[i]);
    *out_text = copy_out(s);
  });
}

etube_status etube_report_summary(const etube_report* r, size_t i, char** out_text) {
  return guarded([&] {
    require(r, "report");
    require(out_text, "out");
    if (i >= r->reports.size()) raise(ErrorCode::InvalidArgument, "report index out of range");
    *out_text = copy_out(summary_line(r->reports[i]));
  });
}

void etube_report_free(etube_report* r) { delete r; }

etube_status etube_slice(const etube_spec* spec, const double* point, const double* line, int grid,
                         etube_slice_format format, char** out, size_t* out_size) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    require(out_size, "out_size");
    const int n = spec->spec.domain.dimension();
    const CVec p = complex_in(point, n);
    const SliceGrid g = line ? slice_grid(spec->tube, p, complex_in(line, n), grid) : slice_grid(spec->tube, p, grid);
    const std::string bytes = format == ETUBE_SLICE_PGM ? encode_pgm(g) : encode_csv(g);
    *out = copy_out(bytes);
    *out_size = bytes.size();
  });
}

etube_status etube_distance_text(const etube_spec* spec, const char* from, const char* to, char** out_text) {
  return guarded([&] {
    require(spec, "spec");
    require(out_text, "out");
    const CVec z = parse_point(spec, from);
    const CVec w = parse_point(spec, to);
    const double d = is_real_chart_point(z) && is_real_chart_point(w)
                         ? hilbert_distance(spec->spec.domain, Vec(z.real()), Vec(w.real()))
                         : kobayashi_supported(spec->tube, z, w);
    *out_text = copy_out(format_double(d));
  });
}

etube_status etube_map_forward_text(const etube_spec* spec, const char* z, char** out_text) {
  return guarded([&] {
    require(spec, "spec");
    require(out_text, "out");
    *out_text = copy_out(format_tangent(to_tangent(spec->tube, parse_point(spec, z))));
  });
}

etube_status etube_map_inverse_text(const etube_spec* spec, const char* triple, char** out_text) {
  return guarded([&] {
    require(spec, "spec");
    require(triple, "triple");
    require(out_text, "out");
    const TangentVector v = parse_tangent(triple, spec->spec.domain.dimension());
    *out_text = copy_out(format_complex_vector(from_tangent(spec->tube, v)));
  });
}

etube_status etube_parse_point(const char* text, double* out, int cap, int* count) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    require(count, "count");
    const auto vals = parse_complex_list(text);
    if (static_cast<int>(vals.size()) > cap) raise(ErrorCode::Parse, "too many coordinates");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      out[2 * i] = vals[i].real();
      out[2 * i + 1] = vals[i].imag();
    }
    *count = static_cast<int>(vals.size());
  });
}

}  // extern "C"
