#pragma once

#include <cstdint>
#include <string>

#include "etube/tube.hpp"

namespace etube {

/// A domain of the dual projective space. Its chart is the dual chart of the
/// primal reference point, so its "world" lifts are primal functionals.
struct DualDomain {
  ConvexDomain domain;
  std::string provenance;
};

/// Dual hyperplane {xi : xi(x) = 0}, represented by x's lift read as a
/// functional on dual vectors.
Functional annihilator(const HPoint& x);

/// Chart of the dual space with the hyperplane at infinity {xi : xi(x0~) = 0}
/// and coordinate functionals e_j for j != argmax |x0~_j|.
Chart dual_chart(const Vec& reference_lift);

/// Dual complement of an open properly convex domain: V-polytopes give an
/// H-domain, H-domains a V-polytope, ellipsoids an ellipsoid.
DualDomain dual_complement(const ConvexDomain& d);
/// Dual complement of an H-domain after removing redundant functionals.
DualDomain dual_complement_h(const ConvexDomain& d);

/// Facet-defining members of a polyhedral family (chart frame), duplicates
/// removed, in family order.
std::vector<Vec> irredundant_functionals(const ConvexDomain& d);

/// xi = g(z) f - f(z) g for the first pair (i <= j) with Re(f(z) conj g(z)) <= 0,
/// as a world functional. Throws InsideTube when no pair violates.
Functional tube_separator(const Tube& t, const CVec& z);
Functional tube_separator(const Tube& t, const HPoint& z);

/// Evaluates a world functional at a chart point of the tube's chart.
Complex evaluate(const Tube& t, const Functional& xi, const CVec& z);

struct TangentSetSample {
  std::vector<Functional> samples;  // world functionals
  double diameter = 0;              // in dual chart coordinates
  double min_gauge = 0;             // minimum of the dual tube gauge on ann(a)
};

/// Samples ann(a) ∩ closure((D*)^e) for a boundary point a of D^e.
TangentSetSample tangent_set_sample(const Tube& t, const CVec& a, int n_samples, std::uint64_t seed = 0,
                                    double band = 1e-8);

}  // namespace etube
