#include "etube/spec_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "etube/format.hpp"

namespace etube {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_double(const std::string& raw) {
  std::string s = trim(raw);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    raise(ErrorCode::Parse, "not a number: '" + trim(raw) + "'");
  }
  return v;
}

Mat parse_matrix(const std::string& s) {
  const auto rows = split(s, ';');
  std::vector<std::vector<double>> vals;
  for (const auto& r : rows) vals.push_back(parse_real_list(r));
  if (vals.empty()) raise(ErrorCode::Parse, "empty matrix");
  const std::size_t cols = vals[0].size();
  if (vals.size() > static_cast<std::size_t>(kMaxHomogeneous) || cols > static_cast<std::size_t>(kMaxHomogeneous)) {
    raise(ErrorCode::Parse, "matrix larger than 8 x 8");
  }
  Mat m(static_cast<int>(vals.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i].size() != cols) raise(ErrorCode::Parse, "matrix rows have different lengths");
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<int>(i), static_cast<int>(j)) = vals[i][j];
  }
  return m;
}

std::vector<Vec> parse_rows(const std::string& s, int width, const std::string& key) {
  const Mat m = parse_matrix(s);
  if (m.cols() != width) {
    raise(ErrorCode::Parse, key + ": rows must have " + std::to_string(width) + " entries");
  }
  std::vector<Vec> out;
  for (int i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
  return out;
}

Vec parse_vector(const std::string& s, int width, const std::string& key) {
  const auto v = parse_real_list(s);
  if (static_cast<int>(v.size()) != width) {
    raise(ErrorCode::Parse, key + ": expected " + std::to_string(width) + " entries");
  }
  Vec out(width);
  for (int i = 0; i < width; ++i) out(i) = v[static_cast<std::size_t>(i)];
  return out;
}

std::string join_row(const Vec& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v(i));
  return s;
}

std::string join_rows(const std::vector<Vec>& rows) {
  std::string s;
  for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "; " : "") + join_row(rows[i]);
  return s;
}

std::string join_matrix(const Mat& m) {
  std::vector<Vec> rows;
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i).transpose());
  return join_rows(rows);
}

const std::set<std::string> kKeys{"name",   "dimension", "chart",    "type",            "vertices",  "functionals",
                                  "center", "shape",     "interval", "reference_point", "generator", "control_puncture"};

}  // namespace

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item));
  return out;
}

Complex parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) raise(ErrorCode::Parse, "empty complex number");
  if (s.back() != 'i') return Complex(parse_double(s), 0.0);
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_of = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t);
  };
  if (split_at == std::string::npos) return Complex(0.0, imag_of(body));
  return Complex(parse_double(body.substr(0, split_at)), imag_of(body.substr(split_at)));
}

std::vector<Complex> parse_complex_list(const std::string& s) {
  std::vector<Complex> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_complex(item));
  return out;
}

DomainSpec parse_domain_spec(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::vector<std::string> generators;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) raise(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 'key: value'");
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (!kKeys.count(key)) raise(ErrorCode::Parse, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (key == "generator") {
      generators.push_back(value);
      continue;
    }
    if (kv.count(key)) raise(ErrorCode::Parse, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  auto require = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) raise(ErrorCode::Parse, "missing key '" + key + "'");
    return it->second;
  };
  auto allow_only = [&](std::set<std::string> allowed) {
    allowed.insert({"name", "dimension", "chart", "type", "reference_point", "control_puncture"});
    for (const auto& [k, v] : kv) {
      if (!allowed.count(k)) raise(ErrorCode::Parse, "key '" + k + "' does not apply to type " + kv["type"]);
    }
  };

  const std::string name = kv.count("name") ? kv["name"] : "domain";
  const double dim_value = parse_double(require("dimension"));
  const int n = static_cast<int>(dim_value);
  if (n != dim_value || n < 1 || n + 1 > kMaxHomogeneous) raise(ErrorCode::Parse, "dimension must be an integer in [1, 7]");
  std::optional<Chart> chart;
  if (kv.count("chart")) {
    const Mat f = parse_matrix(kv["chart"]);
    if (f.rows() != n + 1 || f.cols() != n + 1) raise(ErrorCode::Parse, "chart: expected an (n+1) x (n+1) frame");
    try {
      chart = Chart(f);
    } catch (const Error& e) {
      raise(ErrorCode::Parse, std::string("chart: ") + e.what());
    }
  }
  std::optional<Vec> reference;
  if (kv.count("reference_point")) reference = parse_vector(kv["reference_point"], n, "reference_point");

  const std::string& type = require("type");
  auto build = [&]() -> ConvexDomain {
    if (type == "interval") {
      allow_only({"interval"});
      if (n != 1) raise(ErrorCode::Parse, "interval: dimension must be 1");
      const Vec ab = parse_vector(require("interval"), 2, "interval");
      ConvexDomain d = ConvexDomain::interval(ab(0), ab(1), chart, name);
      if (reference) d = ConvexDomain::hdomain(d.halfspaces(), *reference, d.chart(), name);
      return d;
    }
    if (type == "vpolytope") {
      allow_only({"vertices"});
      return ConvexDomain::vpolytope(parse_rows(require("vertices"), n, "vertices"), reference, chart, name);
    }
    if (type == "hdomain") {
      allow_only({"functionals"});
      if (!reference) raise(ErrorCode::Parse, "hdomain: missing key 'reference_point'");
      return ConvexDomain::hdomain(parse_rows(require("functionals"), n + 1, "functionals"), *reference, chart, name);
    }
    if (type == "ellipsoid") {
      allow_only({"center", "shape"});
      const Vec c = parse_vector(require("center"), n, "center");
      const Mat s = parse_matrix(require("shape"));
      if (s.rows() != n || s.cols() != n) raise(ErrorCode::Parse, "shape: expected an n x n matrix");
      return ConvexDomain::ellipsoid(c, s, reference, chart, name);
    }
    raise(ErrorCode::Parse, "unknown type '" + type + "'");
  };
  ConvexDomain d = build();
  const auto report = validate(d);
  if (!report.passed()) raise(ErrorCode::Validation, report.violations.front());

  DomainSpec out{d, {}, std::nullopt};
  for (const auto& g : generators) {
    const Mat m = parse_matrix(g);
    if (m.rows() != n + 1 || m.cols() != n + 1) raise(ErrorCode::Parse, "generator: expected an (n+1) x (n+1) matrix");
    try {
      out.generators.emplace_back(m);
    } catch (const Error& e) {
      raise(ErrorCode::Parse, std::string("generator: ") + e.what());
    }
  }
  if (kv.count("control_puncture")) {
    const double r = parse_double(kv["control_puncture"]);
    if (!(r > 0)) raise(ErrorCode::Parse, "control_puncture must be positive");
    out.control_puncture = r;
  }
  return out;
}

DomainSpec load_domain_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) raise(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_domain_spec(ss.str());
}

std::string write_domain_spec(const ConvexDomain& d, const std::vector<ProjectiveMap>& generators) {
  std::ostringstream out;
  out << "name: " << d.name() << "\n";
  out << "dimension: " << d.dimension() << "\n";
  out << "chart: " << join_matrix(d.chart().frame()) << "\n";
  switch (d.kind()) {
    case RepKind::VPolytope:
      out << "type: vpolytope\n";
      out << "vertices: " << join_rows(d.as_vpolytope()->vertices) << "\n";
      break;
    case RepKind::HDomain:
      out << "type: hdomain\n";
      out << "functionals: " << join_rows(d.as_hdomain()->functionals) << "\n";
      break;
    case RepKind::Ellipsoid:
      out << "type: ellipsoid\n";
      out << "center: " << join_row(d.as_ellipsoid()->center) << "\n";
      out << "shape: " << join_matrix(d.as_ellipsoid()->shape) << "\n";
      break;
  }
  out << "reference_point: " << join_row(d.reference()) << "\n";
  for (const auto& g : generators) out << "generator: " << join_matrix(g.real_matrix()) << "\n";
  return out.str();
}

}  // namespace etube
