#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nashlab/cones.hpp"

namespace nashlab {

/// A torsion-free rank-one monomial fractional module over an affine
/// monoid, encoded by its finite exponent generator set. Generators are
/// kept minimal with respect to base-translation; the semantic value is
/// the union of translated monoids, so equality is mutual membership.
struct MonomialModule {
  MonoidPtr base;
  std::vector<LatticePoint> gens; // minimal, sorted

  int rank() const { return base->rank; }
  std::string str() const;
};

/// Minimalizes the generators; fails on an empty set.
MonomialModule makeModule(MonoidPtr base, std::vector<LatticePoint> gens);

/// The unit module O (single generator 0).
MonomialModule unitModule(MonoidPtr base);

/// u lies in the module: exists g with u - g in the base monoid.
bool member(const LatticePoint& u, const MonomialModule& A);

/// Semantic equality by mutual membership of generators.
bool moduleEqual(const MonomialModule& A, const MonomialModule& B);

/// A subset of B as modules.
bool moduleSubset(const MonomialModule& A, const MonomialModule& B);

/// Minkowski product A*B (tensor mod torsion).
MonomialModule product(const MonomialModule& A, const MonomialModule& B);

/// A^k, k >= 0 (k = 0 gives the unit module).
MonomialModule modulePower(const MonomialModule& A, const Int& k);

/// {u : u + A in B}, same base required. Rank 2 over a saturated base is
/// computed exactly by staircase intersection; otherwise by a bounded
/// expanding search with a stabilization certificate.
MonomialModule homModule(const MonomialModule& A, const MonomialModule& B);

/// Divisorial hull {u : <u, v_rho> >= min_g <g, v_rho> over the chart-cone
/// rays}. Over an unsaturated base this is only defined through the rays of
/// the saturation; that route must be requested explicitly.
MonomialModule reflexiveHull(const MonomialModule& A, bool viaSaturation = false);

/// Newton-polyhedron closure: lattice points of conv(gens) + dual cone.
MonomialModule integralClosure(const MonomialModule& A);

/// min over generators of <g, v>; v must lie in the chart cone.
Int ordAlong(const MonomialModule& A, const LatticePoint& v);

/// The unique generator when there is exactly one.
std::optional<LatticePoint> isPrincipal(const MonomialModule& A);

/// One linearity domain of v -> min_g <g, v> on the chart cone.
struct SupportPiece {
  LatticePoint left, right; // rays bounding the subcone, sweep order
  LatticePoint vertex;      // the minimizing generator on the piece
};

/// Exact subdivision of a rank-2 cone into the domains of linearity of the
/// support function of a generator set (the normal fan of the Newton
/// polyhedron restricted to the cone).
std::vector<SupportPiece> supportSubdivision(const Cone& sigma,
                                             const std::vector<LatticePoint>& gens);

/// Minimal lattice points of {u : <u, ray_i> >= bound_i}. All constraint
/// rays must lie in the rank-2 chart cone, and the two cone rays must be
/// among them. Exact (no certificates).
struct RayConstraint {
  LatticePoint ray;
  Int bound;
};
std::vector<LatticePoint> minimalPointsOfRegion(const AffineMonoid& base,
                                                const std::vector<RayConstraint>& cs);

} // namespace nashlab
