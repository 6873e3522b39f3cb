#pragma once

#include <optional>
#include <vector>

#include "nashlab/modules.hpp"

namespace nashlab {

enum class TowerMode { NonNormal, Normalized };

/// One chart of a tower level: its monoid, the subcone it covers in
/// normalized mode, its top exterior-power module, and lineage data.
struct TowerChart {
  MonoidPtr monoid;
  std::optional<Cone> cone; // normalized rank-2 towers only
  MonomialModule omegaTop;  // log-Jacobian of the chart monoid
  int level = 0;
  int parent = -1;                     // index into the previous level
  std::optional<LatticePoint> blownGenerator; // generator chosen at the blowup
};

struct Tower {
  TowerMode mode = TowerMode::Normalized;
  std::vector<std::vector<TowerChart>> levels;
  bool terminated = false;
  int m = -1; // stabilization level when terminated

  const std::vector<TowerChart>& level(int j) const { return levels.at(static_cast<size_t>(j)); }
  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

/// Exponent module of Lambda^n Omega / torsion: sums of n minimal
/// generators with nonzero determinant, minimalized.
MonomialModule logJacobian(const AffineMonoid& s);

/// Charts of the blowup of the module A on the chart of S.
/// NonNormal: one chart per kept generator; Normalized (rank 2): one
/// saturated chart per linearity domain of the support function.
std::vector<TowerChart> blowupCharts(const TowerChart& chart,
                                     const MonomialModule& A, TowerMode mode);

/// Iterated Nash blowups; stops when every chart is smooth or when the
/// level budget runs out (a non-terminated tower is a result, not an error).
Tower nashTower(const MonoidPtr& s, TowerMode mode, int maxLevels);
Tower nashTower(const AffineMonoid& s, TowerMode mode, int maxLevels);

/// Ordered rays of the terminated normalized rank-2 tower's smooth
/// subdivision, from rays[0] of the original cone to rays[1].
std::vector<LatticePoint> finalFan(const Tower& t);

/// Chart at the given level whose cone contains the ray; levels past the
/// stabilization of a terminated tower clamp to the last level.
const TowerChart& chartContaining(const Tower& t, int level, const LatticePoint& ray);

/// One chart's trace through the reflexivication loop.
struct ReflexiveChartReport {
  MonoidPtr monoid;
  int steps = 0;    // blowups performed below this chart
  bool terminated = false;
};

struct ReflexiveTowerReport {
  bool terminated = false;
  int steps = 0; // maximum over charts
  std::vector<ReflexiveChartReport> history;
};

/// Iterates: log-Jacobian, reflexive hull, blow up the hull (normalized)
/// until the hull is principal on every chart, within the step budget.
ReflexiveTowerReport reflexiveTower(const MonoidPtr& s, int maxSteps);

} // namespace nashlab
