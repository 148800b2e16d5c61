#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etube/domain.hpp"

namespace etube {

/// Parsed domain-spec document.
///
///   # comment
///   name: square
///   dimension: 2
///   type: vpolytope            (interval | vpolytope | hdomain | ellipsoid)
///   chart: 1,0,0; 0,1,0; 0,0,1 (frame rows, infinity last; optional)
///   vertices: -1,-1; 1,-1; 1,1; -1,1
///   functionals: 1,0,1; ...    (chart-frame rows)
///   center: 0,0
///   shape: 1,0; 0,1
///   interval: -1,1
///   reference_point: 0,0
///   generator: 2,0; 0,0.5      (world matrix, repeatable)
///   control_puncture: 0.3      (negative control: removes |z - x0| <= r from the tube)
struct DomainSpec {
  ConvexDomain domain;
  std::vector<ProjectiveMap> generators;
  std::optional<double> control_puncture;
};

/// Throws Parse on malformed text and Validation when the domain fails
/// validate() (the message is the first violation).
DomainSpec parse_domain_spec(const std::string& text);
DomainSpec load_domain_spec(const std::string& path);

std::string write_domain_spec(const ConvexDomain& d, const std::vector<ProjectiveMap>& generators = {});

/// Comma-separated reals and complex numbers written as a+bi.
std::vector<double> parse_real_list(const std::string& s);
Complex parse_complex(const std::string& s);
std::vector<Complex> parse_complex_list(const std::string& s);

}  // namespace etube
