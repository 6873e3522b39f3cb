#pragma once

#include <memory>
#include <vector>

#include "nashlab/lattice.hpp"

namespace nashlab {

/// A pointed, full-dimensional rational polyhedral cone, stored by its
/// primitive rays together with the inward facet normals of the dual
/// lattice. Rays keep their construction order.
struct Cone {
  int rank = 0;
  std::vector<LatticePoint> rays;
  std::vector<LatticePoint> facets; // <ray, facet> >= 0 cuts out the cone

  bool operator==(const Cone& o) const {
    return rank == o.rank && rays == o.rays;
  }
};

/// Validates pointedness and full dimension; primitivizes rays.
Cone makeCone(int rank, std::vector<LatticePoint> rays);

/// {u : <u,v> >= 0 for all v in c}. Rank 2 output rays are ordered as
/// (normal of rays[0], normal of rays[1]).
Cone dualCone(const Cone& c);

bool coneContains(const Cone& c, const LatticePoint& v);
/// relative interior (all facet pairings strictly positive)
bool coneContainsStrict(const Cone& c, const LatticePoint& v);

/// A finitely generated (possibly non-saturated) pointed submonoid of the
/// character lattice: the combinatorial coordinate ring of a toric chart.
struct AffineMonoid {
  int rank = 0;
  std::vector<LatticePoint> gens; // unique minimal generating set, sorted
  Cone chartCone;                 // dual of the real cone spanned by gens
  bool saturated = false;

  bool operator==(const AffineMonoid& o) const {
    return rank == o.rank && gens == o.gens;
  }
};

using MonoidPtr = std::shared_ptr<const AffineMonoid>;

/// Validates (full group rank, pointed), minimalizes the generator set and
/// decides saturation.
AffineMonoid makeAffineMonoid(int rank, std::vector<LatticePoint> gens);
MonoidPtr makeAffineMonoidPtr(int rank, std::vector<LatticePoint> gens);

/// The unique minimal generating set of c ∩ Z^n, by fundamental-domain
/// enumeration plus an irreducibility filter.
AffineMonoid hilbertBasis(const Cone& c);
MonoidPtr hilbertBasisPtr(const Cone& c);

/// Hilbert basis of the real cone spanned by the generators.
AffineMonoid saturate(const AffineMonoid& s);

/// Decided exactly; the bounded search terminates because the monoid is
/// pointed (a strictly positive functional bounds all coefficients).
bool monoidMembership(const LatticePoint& u, const AffineMonoid& s);

/// n minimal generators forming a lattice basis. (A basis monoid is free,
/// hence automatically saturated.)
bool isSmooth(const AffineMonoid& s);

/// Integer functional strictly positive on every generator.
LatticePoint positiveFunctional(const AffineMonoid& s);

/// Semantic equality (mutual membership of generators).
bool monoidEqual(const AffineMonoid& a, const AffineMonoid& b);

namespace detail {
/// Extreme rays (primitive, deduped) of the cone spanned by the given
/// points; fails Structural if that cone is not pointed or not full-dim.
std::vector<LatticePoint> spanExtremeRays(int rank,
                                          const std::vector<LatticePoint>& pts);
/// Membership in the monoid generated by `gens` (no minimality assumed);
/// `w` must be strictly positive on all gens.
bool rawMonoidMembership(const LatticePoint& u,
                         const std::vector<LatticePoint>& gens,
                         const LatticePoint& w, const Cone& spanCone);
} // namespace detail

} // namespace nashlab
