#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "etube/etube.h"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct SpecDeleter {
  void operator()(etube_spec* s) const { etube_spec_free(s); }
};
struct ReportDeleter {
  void operator()(etube_report* r) const { etube_report_free(r); }
};
struct FreeDeleter {
  void operator()(char* p) const { etube_free(p); }
};
using SpecPtr = std::unique_ptr<etube_spec, SpecDeleter>;
using ReportPtr = std::unique_ptr<etube_report, ReportDeleter>;
using TextPtr = std::unique_ptr<char, FreeDeleter>;

int report_error(etube_status s) {
  std::cerr << "error: " << etube_last_error() << "\n";
  return s;
}

bool is_usage_error(etube_status s) {
  return s == ETUBE_PARSE || s == ETUBE_IO || s == ETUBE_INVALID_ARGUMENT || s == ETUBE_VALIDATION;
}

/// Exit status for failures of a query: malformed input is a usage error.
int query_failure(etube_status s) {
  report_error(s);
  return is_usage_error(s) ? kUsage : kFail;
}

std::optional<SpecPtr> load(const std::string& path) {
  etube_spec* raw = nullptr;
  const etube_status s = etube_spec_load(path.c_str(), &raw);
  if (s != ETUBE_OK) {
    report_error(s);
    return std::nullopt;
  }
  return SpecPtr(raw);
}

bool emit(const std::string& path, const char* data, std::size_t size) {
  if (path.empty()) {
    std::fwrite(data, 1, size, stdout);
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  f.write(data, static_cast<std::streamsize>(size));
  return static_cast<bool>(f);
}

bool parse_point(const std::string& text, int n, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(2 * n), 0.0);
  int count = 0;
  const etube_status s = etube_parse_point(text.c_str(), out.data(), n, &count);
  if (s != ETUBE_OK) {
    report_error(s);
    return false;
  }
  if (count != n) {
    std::cerr << "error: '" << text << "' needs " << n << " coordinates\n";
    return false;
  }
  return true;
}

struct CheckArgs {
  std::string spec;
  std::string suite = "all";
  etube_check_options opt{};
  double tol = 0;
  std::string out;
};

int cmd_check(CheckArgs& a) {
  auto spec = load(a.spec);
  if (!spec) return kUsage;
  a.opt.tolerance = a.tol;
  etube_report* raw = nullptr;
  const etube_status s = etube_check(spec->get(), a.suite.c_str(), &a.opt, &raw);
  if (s != ETUBE_OK) {
    report_error(s);
    return s == ETUBE_UNSUPPORTED_CONFIGURATION || is_usage_error(s) ? kUsage : kFail;
  }
  ReportPtr report(raw);
  char* text = nullptr;
  etube_report_text(report.get(), &text);
  TextPtr doc(text);
  if (!a.out.empty() && !emit(a.out, doc.get(), std::char_traits<char>::length(doc.get()))) return kUsage;
  if (a.out.empty()) std::cout << doc.get() << "\n";
  for (std::size_t i = 0; i < etube_report_count(report.get()); ++i) {
    char* line = nullptr;
    etube_report_summary(report.get(), i, &line);
    TextPtr l(line);
    std::cout << l.get() << "\n";
  }
  return etube_report_passed(report.get()) ? kPass : kFail;
}

struct SliceArgs {
  std::string spec;
  std::string point;
  std::string line;
  int grid = 64;
  std::string format = "csv";
  std::string out;
};

int cmd_slice(const SliceArgs& a) {
  auto spec = load(a.spec);
  if (!spec) return kUsage;
  const int n = etube_spec_dimension(spec->get());
  std::vector<double> p, d;
  if (!a.line.empty()) {
    const auto semi = a.line.find(';');
    if (semi == std::string::npos) {
      std::cerr << "error: --line must read 'point;direction'\n";
      return kUsage;
    }
    if (!parse_point(a.line.substr(0, semi), n, p) || !parse_point(a.line.substr(semi + 1), n, d)) return kUsage;
  } else if (a.point.empty()) {
    std::cerr << "error: give --point or --line\n";
    return kUsage;
  } else if (!parse_point(a.point, n, p)) {
    return kUsage;
  }
  char* bytes = nullptr;
  std::size_t size = 0;
  const auto format = a.format == "pgm" ? ETUBE_SLICE_PGM : ETUBE_SLICE_CSV;
  const etube_status s = etube_slice(spec->get(), p.data(), d.empty() ? nullptr : d.data(), a.grid, format, &bytes, &size);
  if (s != ETUBE_OK) {
    report_error(s);
    return s == ETUBE_REAL_POINT || is_usage_error(s) ? kUsage : kFail;
  }
  TextPtr data(bytes);
  return emit(a.out, data.get(), size) ? kPass : kUsage;
}

int print_text(etube_status s, char* const& text) {
  if (s != ETUBE_OK) return query_failure(s);
  TextPtr t(text);
  std::cout << t.get() << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic tubes over properly convex domains"};
  app.require_subcommand(1);

  CheckArgs check;
  etube_check_options_default(&check.opt);
  auto* c = app.add_subcommand("check", "Run a verifier suite on a domain spec");
  c->add_option("spec", check.spec, "Domain spec file")->required();
  c->add_option("--suite", check.suite, "all|linconv|cconv|duality|metric|homeo|exhaust|action")
      ->check(CLI::IsMember({"all", "linconv", "cconv", "duality", "metric", "homeo", "exhaust", "action"}));
  c->add_option("--samples", check.opt.samples, "Samples per check")->capture_default_str();
  c->add_option("--lines", check.opt.lines, "Complex lines for cconv")->capture_default_str();
  c->add_option("--grid", check.opt.grid, "Raster resolution for cconv")->capture_default_str()->check(CLI::Range(8, 8192));
  c->add_option("--tol", check.tol, "Tolerance override for linconv, duality and metric")->check(CLI::PositiveNumber);
  c->add_option("--seed", check.opt.seed, "Root seed (default 0)");
  c->add_option("--out", check.out, "Write the report document here instead of stdout");

  SliceArgs slice;
  auto* s = app.add_subcommand("slice", "Emit a grid over a slice of the tube");
  s->add_option("spec", slice.spec, "Domain spec file")->required();
  auto* point_opt = s->add_option("--point", slice.point, "Non-real chart point, e.g. 0+0.5i");
  s->add_option("--line", slice.line, "Line 'point;direction' with complex entries")->excludes(point_opt);
  s->add_option("--grid", slice.grid, "Grid resolution")->capture_default_str()->check(CLI::Range(2, 8192));
  s->add_option("--format", slice.format, "csv or pgm")->check(CLI::IsMember({"csv", "pgm"}))->capture_default_str();
  s->add_option("--out", slice.out, "Output file (default stdout)");

  std::string dist_spec, from, to;
  auto* d = app.add_subcommand("dist", "Hilbert or Kobayashi distance");
  d->add_option("spec", dist_spec, "Domain spec file")->required();
  d->add_option("--from", from, "Chart point")->required();
  d->add_option("--to", to, "Chart point")->required();

  std::string map_spec, forward, inverse;
  auto* m = app.add_subcommand("map", "Tube to tangent bundle and back");
  m->add_option("spec", map_spec, "Domain spec file")->required();
  auto* fwd = m->add_option("--forward", forward, "Tube point");
  m->add_option("--inverse", inverse, "Tangent vector 'base;direction;magnitude'")->excludes(fwd);

  std::string dual_spec, dual_out;
  auto* u = app.add_subcommand("dual", "Write the dual complement as a domain spec");
  u->add_option("spec", dual_spec, "Domain spec file")->required();
  u->add_option("--out", dual_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  if (c->parsed()) return cmd_check(check);
  if (s->parsed()) return cmd_slice(slice);
  if (d->parsed()) {
    auto spec = load(dist_spec);
    if (!spec) return kUsage;
    char* text = nullptr;
    return print_text(etube_distance_text(spec->get(), from.c_str(), to.c_str(), &text), text);
  }
  if (m->parsed()) {
    auto spec = load(map_spec);
    if (!spec) return kUsage;
    char* text = nullptr;
    if (!forward.empty()) return print_text(etube_map_forward_text(spec->get(), forward.c_str(), &text), text);
    if (!inverse.empty()) return print_text(etube_map_inverse_text(spec->get(), inverse.c_str(), &text), text);
    std::cerr << "error: give --forward or --inverse\n";
    return kUsage;
  }
  auto spec = load(dual_spec);
  if (!spec) return kUsage;
  etube_spec* raw = nullptr;
  etube_status st = etube_spec_dual(spec->get(), &raw);
  if (st != ETUBE_OK) return query_failure(st);
  SpecPtr dual(raw);
  char* text = nullptr;
  st = etube_spec_write(dual.get(), &text);
  if (st != ETUBE_OK) return query_failure(st);
  TextPtr t(text);
  return emit(dual_out, t.get(), std::char_traits<char>::length(t.get())) ? kPass : kUsage;
}
