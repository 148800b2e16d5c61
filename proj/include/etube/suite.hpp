#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etube/spec_io.hpp"
#include "etube/verify.hpp"

namespace etube {

struct SuiteOptions {
  std::size_t samples = 1000;
  std::size_t lines = 100;
  int grid = 256;
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
};

/// all | linconv | cconv | duality | metric | homeo | exhaust | action
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite that applies to the spec for "all".
/// Throws InvalidArgument for an unknown suite and UnsupportedConfiguration
/// for a named suite that does not apply (e.g. linconv on an ellipsoid).
std::vector<VerifierReport> run_suite(const DomainSpec& spec, const std::string& suite, const SuiteOptions& opt);

/// Tube membership with the closed disk |z - x0| <= r removed.
MembershipFn punctured_membership(const Tube& t, double r);

/// Values on an R x R grid of the line p + zeta d, row 0 on top, cell
/// (R/2, R/2) at zeta = 0: u inside, -1 outside, -2 in the boundary band.
struct SliceGrid {
  int resolution = 0;
  double cell = 0;
  std::vector<double> values;
};
SliceGrid slice_grid(const Tube& t, const CVec& p, const CVec& d, int resolution, double band = kVerifierBand);
/// The slice through a non-real point along its trace line.
SliceGrid slice_grid(const Tube& t, const CVec& z, int resolution, double band = kVerifierBand);

std::string encode_csv(const SliceGrid& g);
/// Binary P5; u in [0, pi/2) to gray 0..254, everything else 255.
std::string encode_pgm(const SliceGrid& g);

/// "base;dir;magnitude" with comma-separated vectors and signed direction
/// entries, e.g. "0;+1;0.549306144334055".
std::string format_tangent(const TangentVector& v);
TangentVector parse_tangent(const std::string& s, int n);

std::string format_complex_vector(const CVec& z);

}  // namespace etube
