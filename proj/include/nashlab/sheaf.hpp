#pragma once

#include <map>
#include <optional>

#include "nashlab/tower.hpp"

namespace nashlab {

/// Positional expansion of i in base b >= 2; for b = 1 the canonical
/// expansion is i ones in level 0 (downstream consumers maximize over
/// expansion shapes themselves).
struct DigitExpansion {
  Int base;
  std::vector<Int> digits; // digits[k] is the level-k digit
  Int value() const;
};

DigitExpansion digits(const Int& i, const Int& base);

/// Exponent module of Lambda^{n+1} P(B) / torsion at a fixed search radius:
/// sums of n+1 module elements taken from the generators plus monoid shells
/// of length <= radius, with affinely independent exponents.
/// Fails Degenerate when no tuple has a nonzero determinant.
MonomialModule extendedLogJacobian(const MonomialModule& B, int radius);

/// Radius-stabilized value: grows the radius until three consecutive radii
/// agree, and reports the first radius of the certificate.
MonomialModule extendedLogJacobianStable(const MonomialModule& B, int maxRadius,
                                         int* usedRadius = nullptr);

/// Per-chart cache of the tower powers E_{(n+2)^j} with the seed sheaf O.
class SheafTowerCache {
public:
  explicit SheafTowerCache(MonoidPtr chart, int maxRadius = 8);

  const MonoidPtr& chart() const { return chart_; }
  Int nPlus2() const { return Int(chart_->rank) + 2; }

  /// E_{(n+2)^j}; computed (and cached) on demand.
  const MonomialModule& power(int j);
  int radiusUsed(int j) const;
  int maxRadius() const { return maxRadius_; }

private:
  MonoidPtr chart_;
  int maxRadius_;
  std::vector<MonomialModule> powers_;
  std::vector<int> radii_;
};

/// F_i as the base-(n+2) digit product of cached powers (i >= 0; F_0 = O).
MonomialModule sheafF(SheafTowerCache& cache, const Int& i);

/// Does the (n+2)-fold product of E_{(n+2)^j} equal E_{(n+2)^{j+1}}?
bool carryingSurjective(SheafTowerCache& cache, int j);

struct FiniteTypeReport {
  std::optional<int> firstStableJ;       // carrying at j and j+1 (degree-consistent)
  std::optional<int> firstCompositeJ;    // written form: (n+2)^2-fold power to j+2
  int levelsChecked = 0;
};

/// Smallest j certified by two consecutive surjective carryings.
FiniteTypeReport finiteTypeProbe(SheafTowerCache& cache, int maxLevel);

/// F_j[N] of the homogeneous-coordinate-ring filtration, computed as the
/// stabilized Hom chain lim_s Hom(X^{n+s}, X^{N+s} F_k). For N = -1 the
/// base-1 expansions are joined over shapes with levels up to
/// maxShapeLevel; one past the tower stabilization level is enough.
MonomialModule filtrationModule(SheafTowerCache& cache, const Int& j, int N,
                                int sBudget = 8, int maxShapeLevel = 2);

/// integralClosure(Hom(F_{(n+2)^i - 1}, F_{(n+2)^i})) — the
/// Grauert-Riemenschneider candidate at stage i.
MonomialModule grFormula(SheafTowerCache& cache, int i);

struct GrStabilization {
  MonomialModule module;
  int index; // first i with equal value at i and i+1
};

GrStabilization grFormulaStable(SheafTowerCache& cache, int maxI);

} // namespace nashlab
