#pragma once

#include <string>
#include <vector>

#include "etube/tube.hpp"

namespace etube {

/// Omega / Gamma with Gamma generated by real projective maps preserving Omega.
class ConvexRPManifold {
 public:
  /// Throws GroupValidation when a generator is not real or does not preserve
  /// the domain.
  ConvexRPManifold(ConvexDomain domain, std::vector<ProjectiveMap> generators);

  const ConvexDomain& domain() const { return domain_; }
  const Tube& tube() const { return tube_; }
  const std::vector<ProjectiveMap>& generators() const { return generators_; }

 private:
  ConvexDomain domain_;
  Tube tube_;
  std::vector<ProjectiveMap> generators_;
};

/// Letters are +(i + 1) for generator i and -(i + 1) for its inverse; a word
/// [l1, ..., lk] acts by g_l1 ... g_lk.
using Word = std::vector<int>;

/// Reduced words of length 1..max_length, shortest first.
std::vector<Word> reduced_words(std::size_t n_generators, int max_length);
ProjectiveMap word_matrix(const ConvexRPManifold& m, const Word& w);
std::string word_name(const Word& w);

/// Asserts that no complex eigenvector class of any non-trivial reduced word
/// lies in Omega^e.
VerifierReport check_free_action(const ConvexRPManifold& m, int word_length);

struct OrbitRepresentative {
  HPoint point;
  Word word;
};

/// Orbit element of z in a fixed fundamental domain. For a single hyperbolic
/// generator on RP^1 the domain is the annulus {1 <= |w| < |mu|} in the
/// eigen-coordinate w normalized to |w(x0)| = 1; otherwise the orbit element
/// minimizing h(x0, foot) + core distance over words up to word_length.
OrbitRepresentative orbit_reduce(const ConvexRPManifold& m, const HPoint& z, int word_length);

/// min over |k| <= word_length of k(z, g^k w) for a cyclic group acting on a
/// domain of RP^1.
double quotient_distance_cyclic(const ConvexRPManifold& m, const HPoint& z, const HPoint& w, int word_length);

}  // namespace etube
