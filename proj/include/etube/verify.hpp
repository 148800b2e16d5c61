#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "etube/duality.hpp"
#include "etube/rng.hpp"
#include "etube/tangent.hpp"

namespace etube {

/// Samples are skipped when |p p' - 1| or the distance to the real boundary
/// (in gauge units) is below this.
inline constexpr double kVerifierBand = 1e-6;

/// Uniform point of D by rejection from its bounding box.
Vec sample_domain_point(const ConvexDomain& d, Stream& rng);
/// Point of D^e: a domain point pushed into a random imaginary direction by a
/// uniform fraction of the slice radius.
CVec sample_tube_point(const Tube& t, Stream& rng);
/// Point of the box enclosing D^e, enlarged by `margin` (relative).
CVec sample_box_point(const Tube& t, Stream& rng, double margin = 0.25);
/// Whether z is within `band` of the tube boundary in the sense above.
bool in_boundary_band(const Tube& t, const CVec& z, double band = kVerifierBand);

struct LinearConvexityOptions {
  std::size_t n_exterior = 1000;
  std::size_t n_kernel_samples = 1000;
  std::uint64_t seed = 0;
  /// Replaces the separator by g(z) f + f(z) g (negative control).
  bool flip_separator = false;
  /// Bound on |xi(z)| / (|xi| |z~|).
  double tolerance = 1e-10;
};
VerifierReport verify_linear_convexity(const Tube& t, const LinearConvexityOptions& opt);

/// Membership predicate used in place of tube_contains (negative controls).
using MembershipFn = std::function<bool(const CVec&)>;

/// Complex affine line z1 + zeta d of the chart rasterized over a window of
/// the zeta plane; cell (i, j) is centered at (re, im) = (x0 + (j + .5) h, y0 + (i + .5) h).
struct SliceRaster {
  CVec origin;
  CVec direction;
  double x0 = 0;
  double y0 = 0;
  double cell = 0;
  int resolution = 0;
  std::vector<std::uint8_t> inside;
  /// Per 2x2 block with a checkerboard pattern: +1 if the shared corner is
  /// inside, -1 if outside, 0 otherwise. Empty when not sampled.
  std::vector<std::int8_t> saddle;

  Complex parameter(int i, int j) const;
  CVec point(int i, int j) const { return origin + parameter(i, j) * direction; }
  bool at(int i, int j) const { return inside[static_cast<std::size_t>(i) * resolution + j] != 0; }
  bool touches_frame() const;
};

/// Square window {|Re zeta - cx|, |Im zeta - cy| <= side / 2}.
struct ParameterWindow {
  double cx = 0;
  double cy = 0;
  double side = 0;
};

/// Window around the region's slice on z1 + zeta d, fitted on a coarse raster
/// with a 10% margin on each side.
ParameterWindow fit_slice_window(const Tube& t, const CVec& z1, const CVec& d, const MembershipFn& member = {});

/// Rasterizes the slice of the membership region on the line z1 + zeta d.
/// The window is fitted to the region and enlarged until the frame is
/// exterior; throws Resolution when that fails.
SliceRaster rasterize_slice(const Tube& t, const CVec& z1, const CVec& d, int resolution,
                            const MembershipFn& member = {});

/// Components of the region and of its complement. Both are 4-neighbour; a
/// checkerboard block links diagonally the side its sampled corner belongs to.
/// Without saddle samples the complement is 8-neighbour.
struct RasterTopology {
  int region_components = 0;
  int complement_components = 0;
};
RasterTopology raster_topology(const SliceRaster& r);

struct CConvexityOptions {
  std::size_t n_lines = 200;
  int resolution = 512;
  std::uint64_t seed = 0;
  MembershipFn member;
};
VerifierReport verify_c_convexity(const Tube& t, const CConvexityOptions& opt);

/// Direction one: kernels of dual tube points miss D^e. Direction two: tube
/// separators lie in the closed dual tube up to `tolerance` (pairwise test).
VerifierReport verify_duality_identity(const ConvexDomain& d, std::size_t n_samples, std::uint64_t seed,
                                       double tolerance = 1e-12);

/// Hilbert against slice Poincare on real pairs, two normalizations of one
/// slice on complex pairs (both within `tolerance`), and u = phi within 1e-9.
VerifierReport verify_metric_consistency(const ConvexDomain& d, std::size_t n_pairs, std::uint64_t seed,
                                         double tolerance = 1e-10);

/// Throws GroupValidation when an element does not preserve the base.
VerifierReport verify_homeomorphism(const Tube& t, std::size_t n_samples,
                                    const std::vector<ProjectiveMap>& group_elements, std::uint64_t seed);

/// Index of the first delta whose scaled tube contains z, continuing the
/// sequence by halving past its end; -1 if z is not in D^e.
int absorption_index(const Tube& t, const std::vector<double>& deltas, const CVec& z);

/// Throws InvalidArgument unless deltas decrease strictly inside (0, 1).
VerifierReport verify_exhaustion_monotone(const ConvexDomain& d, const std::vector<double>& deltas,
                                          std::size_t n_samples, std::uint64_t seed);

}  // namespace etube
