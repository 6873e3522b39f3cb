#pragma once

#include "nashlab/modules.hpp"

namespace nashlab {

/// Minimal smooth subdivision of a rank-2 cone: the lattice points on the
/// compact boundary of conv(cone ∩ Z² \ 0), walked from rays[0] to rays[1].
/// Adjacent determinants are ±1. Independent of the tower machinery.
struct HJResolution {
  std::vector<LatticePoint> rays;
};

HJResolution hjResolve(const Cone& c);

/// tau_* O(i K): minimal generators of {u : <u, v> >= i for every
/// resolution ray v}, over the saturated chart of `sigma`. Plain box-scan
/// oracle, shares nothing with the closure operators under test.
MonomialModule pluricanonicalModule(const Cone& sigma,
                                    const std::vector<LatticePoint>& resolutionRays,
                                    const Int& i);

/// Grauert-Riemenschneider oracle: minimal generators of the relative
/// interior lattice points of the dual cone.
MonomialModule grInterior(const Cone& sigma);

} // namespace nashlab
