#include "etube/complexify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "etube/format.hpp"
#include "etube/rng.hpp"
#include "etube/tangent.hpp"

namespace etube {

ConvexRPManifold::ConvexRPManifold(ConvexDomain domain, std::vector<ProjectiveMap> generators)
    : domain_(std::move(domain)), tube_(domain_), generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.size() != domain_.dimension() + 1 || !g.is_real() || !preserves(domain_, g)) {
      raise(ErrorCode::GroupValidation, "generator " + std::to_string(i + 1) + " does not preserve the domain");
    }
  }
}

std::vector<Word> reduced_words(std::size_t n_generators, int max_length) {
  std::vector<Word> out;
  std::vector<Word> frontier{Word{}};
  const int g = static_cast<int>(n_generators);
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (int l = -g; l <= g; ++l) {
        if (l == 0 || (!w.empty() && w.back() == -l)) continue;
        Word e = w;
        e.push_back(l);
        next.push_back(e);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

ProjectiveMap word_matrix(const ConvexRPManifold& m, const Word& w) {
  ProjectiveMap out = ProjectiveMap::identity(m.domain().dimension() + 1);
  for (int l : w) {
    const ProjectiveMap& g = m.generators().at(static_cast<std::size_t>(std::abs(l) - 1));
    out = out * (l > 0 ? g : g.inverse());
  }
  return out;
}

std::string word_name(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!s.empty()) s += " ";
    const int power = static_cast<int>(j - i) * (w[i] > 0 ? 1 : -1);
    s += "g" + std::to_string(std::abs(w[i]));
    if (power != 1) s += "^" + std::to_string(power);
    i = j;
  }
  return s;
}

namespace {

// Eigenspaces of a complex matrix as kernel bases of A - lambda I.
std::vector<CMat> eigenspaces(const CMat& a) {
  Eigen::ComplexEigenSolver<CMat> es(a);
  const auto& lambdas = es.eigenvalues();
  const double scale = a.norm();
  std::vector<Complex> distinct;
  for (int i = 0; i < lambdas.size(); ++i) {
    const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                  [&](Complex l) { return std::abs(l - lambdas(i)) <= 1e-9 * scale; });
    if (!seen) distinct.push_back(lambdas(i));
  }
  std::vector<CMat> out;
  for (const Complex l : distinct) {
    const CMat shifted = a - l * CMat::Identity(a.rows(), a.cols());
    Eigen::FullPivLU<CMat> lu(shifted);
    lu.setThreshold(1e-9);
    out.push_back(lu.kernel());
  }
  return out;
}

}  // namespace

VerifierReport check_free_action(const ConvexRPManifold& m, int word_length) {
  VerifierReport rep;
  rep.name = "free_action";
  const Tube& t = m.tube();
  const Vec x0 = m.domain().reference();
  double min_separation = std::numeric_limits<double>::infinity();
  const auto words = reduced_words(m.generators().size(), word_length);
  for (std::size_t k = 0; k < words.size(); ++k) {
    const Word& w = words[k];
    const ProjectiveMap a = word_matrix(m, w);
    ++rep.samples_run;
    Stream rng(0, k);
    for (const CMat& basis : eigenspaces(a.matrix())) {
      if (basis.cols() == 0) continue;
      std::vector<CVec> probes;
      for (int c = 0; c < basis.cols(); ++c) probes.push_back(basis.col(c));
      if (basis.cols() > 1) {
        for (int s = 0; s < 64; ++s) {
          CVec v = CVec::Zero(basis.rows());
          for (int c = 0; c < basis.cols(); ++c) v += Complex(rng.normal(), rng.normal()) * basis.col(c);
          probes.push_back(v);
        }
      }
      for (const CVec& v : probes) {
        if (tube_contains(t, HPoint(v))) {
          std::string coords;
          const CVec c = HPoint(v).coords();
          for (int i = 0; i < c.size(); ++i) coords += (i ? "," : "") + format_complex(c(i));
          rep.violation("word " + word_name(w) + " fixes [" + coords + "] in the tube");
          break;
        }
      }
    }
    try {
      min_separation = std::min(min_separation, hilbert_distance(m.domain(), x0, apply_in_chart(a, t.chart(), x0)));
    } catch (const Error&) {
    }
  }
  rep.notes.push_back("words checked: " + std::to_string(words.size()));
  rep.notes.push_back("min orbit separation of the reference point: " + format_double(min_separation));
  return rep;
}

namespace {

struct CyclicCoordinate {
  Mat inverse_eigen;  // rows give (a, b) with X = a e1 + b e2
  double scale;       // |w(x0)|
  double mu;          // |lambda1 / lambda2| > 1
};

std::optional<CyclicCoordinate> cyclic_coordinate(const ConvexRPManifold& m) {
  if (m.domain().dimension() != 1 || m.generators().size() != 1) return std::nullopt;
  const Mat g = m.generators()[0].real_matrix();
  Eigen::EigenSolver<Mat> es(g);
  const auto l = es.eigenvalues();
  if (std::abs(l(0).imag()) > 0 || std::abs(l(1).imag()) > 0) return std::nullopt;
  const int big = std::abs(l(0).real()) >= std::abs(l(1).real()) ? 0 : 1;
  const double mu = std::abs(l(big).real() / l(1 - big).real());
  if (!(mu > 1.0 + 1e-12)) return std::nullopt;
  Mat e(2, 2);
  e.col(0) = es.eigenvectors().col(big).real();
  e.col(1) = es.eigenvectors().col(1 - big).real();
  const Mat inv = e.inverse();
  const Vec ab = inv * m.domain().chart().lift(m.domain().reference());
  return CyclicCoordinate{inv, std::abs(ab(0) / ab(1)), mu};
}

}  // namespace

OrbitRepresentative orbit_reduce(const ConvexRPManifold& m, const HPoint& z, int word_length) {
  const Tube& t = m.tube();
  if (!tube_contains(t, z)) raise(ErrorCode::OutsideTube, "orbit_reduce: point is outside the tube");
  if (const auto cc = cyclic_coordinate(m)) {
    const CVec ab = cc->inverse_eigen.cast<Complex>() * z.coords();
    double mod = std::abs(ab(0) / ab(1)) / cc->scale;
    int k = 0;
    while (mod >= cc->mu && k < word_length) {
      mod /= cc->mu;
      ++k;
    }
    while (mod < 1.0 && -k < word_length) {
      mod *= cc->mu;
      --k;
    }
    const Word w(static_cast<std::size_t>(std::abs(k)), k > 0 ? -1 : 1);
    return OrbitRepresentative{apply(word_matrix(m, w), z), w};
  }
  auto score = [&](const HPoint& p) {
    const CVec c = t.chart().complex_coords(p);
    const TangentVector v = to_tangent(t, c);
    return hilbert_distance(m.domain(), m.domain().reference(), v.base) + v.magnitude;
  };
  OrbitRepresentative best{z, {}};
  double best_score = score(z);
  for (const Word& w : reduced_words(m.generators().size(), word_length)) {
    const HPoint p = apply(word_matrix(m, w), z);
    const double s = score(p);
    if (s < best_score) {
      best_score = s;
      best = OrbitRepresentative{p, w};
    }
  }
  return best;
}

double quotient_distance_cyclic(const ConvexRPManifold& m, const HPoint& z, const HPoint& w, int word_length) {
  if (m.domain().dimension() != 1 || m.generators().size() != 1) {
    raise(ErrorCode::UnsupportedConfiguration, "quotient_distance_cyclic: needs one generator acting on RP^1");
  }
  const Tube& t = m.tube();
  const Chart& c = t.chart();
  const CVec zc = c.complex_coords(z);
  const ProjectiveMap g = m.generators()[0];
  const ProjectiveMap gi = g.inverse();
  double best = kobayashi_supported(t, zc, c.complex_coords(w));
  HPoint up = w;
  HPoint down = w;
  for (int k = 1; k <= word_length; ++k) {
    up = apply(g, up);
    down = apply(gi, down);
    for (const HPoint* p : {&up, &down}) {
      try {
        best = std::min(best, kobayashi_supported(t, zc, c.complex_coords(*p)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OutsideTube && e.code() != ErrorCode::Infinity) throw;
      }
    }
  }
  return best;
}

}  // namespace etube
