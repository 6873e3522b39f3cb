#include "nashlab/tower.hpp"

#include <algorithm>
#include <functional>

namespace nashlab {

namespace {

std::optional<AffineMonoid> tryMakeMonoid(int rank, std::vector<LatticePoint> gens) {
  try {
    return makeAffineMonoid(rank, std::move(gens));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Structural) return std::nullopt; // non-pointed chart
    throw;
  }
}

} // namespace

MonomialModule logJacobian(const AffineMonoid& s) {
  int n = s.rank;
  if (static_cast<int>(s.gens.size()) < n)
    fail(ErrorKind::Degenerate, "logJacobian: fewer generators than the rank");
  std::vector<LatticePoint> sums;
  std::vector<size_t> idx(static_cast<size_t>(n));
  std::function<void(size_t, int)> rec = [&](size_t start, int chosen) {
    if (chosen == n) {
      std::vector<LatticePoint> rows;
      rows.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) rows.push_back(s.gens[idx[static_cast<size_t>(i)]]);
      if (det(rows) != 0) {
        LatticePoint sum = rows[0];
        for (int i = 1; i < n; ++i) sum = sum + rows[static_cast<size_t>(i)];
        sums.push_back(std::move(sum));
      }
      return;
    }
    for (size_t i = start; i < s.gens.size(); ++i) {
      idx[static_cast<size_t>(chosen)] = i;
      rec(i + 1, chosen + 1);
    }
  };
  rec(0, 0);
  if (sums.empty())
    fail(ErrorKind::Degenerate, "logJacobian: no nondegenerate generator subset");
  return makeModule(std::make_shared<const AffineMonoid>(s), std::move(sums));
}

std::vector<TowerChart> blowupCharts(const TowerChart& chart,
                                     const MonomialModule& A, TowerMode mode) {
  if (A.gens.empty()) fail(ErrorKind::Structural, "blowupCharts: empty module");
  const AffineMonoid& s = *chart.monoid;

  if (mode == TowerMode::Normalized) {
    if (s.rank != 2)
      fail(ErrorKind::Precondition,
           "normalized blowups need the rank-2 fan machinery");
    Cone sigma = chart.cone ? *chart.cone : s.chartCone;
    auto pieces = supportSubdivision(sigma, A.gens);
    std::vector<TowerChart> out;
    for (const auto& p : pieces) {
      Cone sub = makeCone(2, {p.left, p.right});
      MonoidPtr m = hilbertBasisPtr(dualCone(sub));
      TowerChart c;
      c.monoid = m;
      c.cone = sub;
      c.omegaTop = logJacobian(*m);
      c.level = chart.level + 1;
      c.blownGenerator = p.vertex;
      out.push_back(std::move(c));
    }
    return out;
  }

  // non-normal mode: one chart per generator, then prune
  struct Raw {
    MonoidPtr monoid;
    LatticePoint gen;
  };
  std::vector<Raw> raws;
  for (const auto& g : A.gens) {
    std::vector<LatticePoint> gens = s.gens;
    for (const auto& a : A.gens) {
      LatticePoint d = a - g;
      if (!d.isZero()) gens.push_back(d);
    }
    auto m = tryMakeMonoid(s.rank, std::move(gens));
    if (!m) continue; // non-pointed: g is not a vertex of the Newton polyhedron
    raws.push_back({std::make_shared<const AffineMonoid>(std::move(*m)), g});
  }
  std::vector<Raw> uniq;
  for (auto& r : raws) {
    bool dup = false;
    for (const auto& u : uniq)
      if (monoidEqual(*r.monoid, *u.monoid)) { dup = true; break; }
    if (!dup) uniq.push_back(std::move(r));
  }
  // a chart whose monoid strictly contains another kept chart's monoid is a
  // sub-open of it and carries no new geometry
  auto containsMonoid = [](const AffineMonoid& big, const AffineMonoid& small) {
    for (const auto& g : small.gens)
      if (!monoidMembership(g, big)) return false;
    return true;
  };
  std::vector<TowerChart> out;
  for (size_t i = 0; i < uniq.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < uniq.size() && !redundant; ++j) {
      if (i == j) continue;
      if (containsMonoid(*uniq[i].monoid, *uniq[j].monoid)) redundant = true;
    }
    if (redundant) continue;
    TowerChart c;
    c.monoid = uniq[i].monoid;
    c.omegaTop = logJacobian(*uniq[i].monoid);
    c.level = chart.level + 1;
    c.blownGenerator = uniq[i].gen;
    out.push_back(std::move(c));
  }
  if (out.empty())
    fail(ErrorKind::Structural, "blowupCharts: pruning removed every chart");
  return out;
}

namespace {

bool allSmooth(const std::vector<TowerChart>& charts) {
  return std::all_of(charts.begin(), charts.end(),
                     [](const TowerChart& c) { return isSmooth(*c.monoid); });
}

} // namespace

Tower nashTower(const MonoidPtr& s, TowerMode mode, int maxLevels) {
  if (maxLevels < 1) fail(ErrorKind::Structural, "nashTower: maxLevels >= 1");
  Tower t;
  t.mode = mode;

  TowerChart root;
  root.monoid = s;
  if (s->rank == 2) root.cone = s->chartCone;
  root.omegaTop = logJacobian(*s);
  root.level = 0;
  t.levels.push_back({std::move(root)});

  if (allSmooth(t.levels[0])) {
    t.terminated = true;
    t.m = 0;
    return t;
  }

  for (int lvl = 0; lvl < maxLevels; ++lvl) {
    std::vector<TowerChart> next;
    const auto& cur = t.levels.back();
    for (size_t ci = 0; ci < cur.size(); ++ci) {
      const TowerChart& c = cur[ci];
      if (isSmooth(*c.monoid)) {
        TowerChart copy = c;
        copy.level = c.level + 1;
        copy.parent = static_cast<int>(ci);
        copy.blownGenerator = std::nullopt;
        next.push_back(std::move(copy));
        continue;
      }
      auto children = blowupCharts(c, c.omegaTop, mode);
      for (auto& ch : children) {
        ch.parent = static_cast<int>(ci);
        next.push_back(std::move(ch));
      }
    }
    t.levels.push_back(std::move(next));
    if (allSmooth(t.levels.back())) {
      t.terminated = true;
      t.m = static_cast<int>(t.levels.size()) - 1;
      return t;
    }
  }
  t.terminated = false;
  return t;
}

Tower nashTower(const AffineMonoid& s, TowerMode mode, int maxLevels) {
  return nashTower(std::make_shared<const AffineMonoid>(s), mode, maxLevels);
}

std::vector<LatticePoint> finalFan(const Tower& t) {
  if (!t.terminated)
    fail(ErrorKind::State, "finalFan: tower did not terminate");
  if (t.mode != TowerMode::Normalized)
    fail(ErrorKind::State, "finalFan: fan assembly works on normalized towers");
  const auto& leaves = t.levels.back();
  std::vector<LatticePoint> rays;
  for (size_t i = 0; i < leaves.size(); ++i) {
    if (!leaves[i].cone)
      fail(ErrorKind::State, "finalFan: chart without a cone");
    const Cone& c = *leaves[i].cone;
    if (i == 0) {
      rays.push_back(c.rays[0]);
    } else if (!(rays.back() == c.rays[0])) {
      fail(ErrorKind::Structural, "finalFan: leaf cones are not contiguous");
    }
    rays.push_back(c.rays[1]);
  }
  return rays;
}

const TowerChart& chartContaining(const Tower& t, int level, const LatticePoint& ray) {
  if (t.mode != TowerMode::Normalized)
    fail(ErrorKind::State, "chartContaining: normalized towers only");
  if (level > t.depth()) {
    if (!t.terminated)
      fail(ErrorKind::State, "chartContaining: level beyond a non-terminated tower");
    level = t.depth();
  }
  for (const auto& c : t.level(level)) {
    if (c.cone && coneContains(*c.cone, ray)) return c;
  }
  fail(ErrorKind::Structural,
       "chartContaining: ray " + ray.str() + " not covered at level " +
           std::to_string(level));
}

namespace {

ReflexiveChartReport reflexiveRec(const MonoidPtr& monoid, int budget, int depth,
                                  std::vector<ReflexiveChartReport>& leaves) {
  MonomialModule jac = logJacobian(*monoid);
  MonomialModule hull = reflexiveHull(jac);
  if (isPrincipal(hull)) {
    ReflexiveChartReport r{monoid, depth, true};
    leaves.push_back(r);
    return r;
  }
  if (budget <= 0) {
    ReflexiveChartReport r{monoid, depth, false};
    leaves.push_back(r);
    return r;
  }
  TowerChart chart;
  chart.monoid = monoid;
  chart.cone = monoid->chartCone;
  chart.omegaTop = jac;
  auto children = blowupCharts(chart, hull, TowerMode::Normalized);
  ReflexiveChartReport agg{monoid, depth, true};
  for (const auto& ch : children) {
    ReflexiveChartReport sub = reflexiveRec(ch.monoid, budget - 1, depth + 1, leaves);
    agg.terminated = agg.terminated && sub.terminated;
    agg.steps = std::max(agg.steps, sub.steps);
  }
  return agg;
}

} // namespace

ReflexiveTowerReport reflexiveTower(const MonoidPtr& s, int maxSteps) {
  if (s->rank != 2)
    fail(ErrorKind::Precondition, "reflexiveTower: rank 2 only");
  if (!s->saturated)
    fail(ErrorKind::Precondition, "reflexiveTower: saturated chart required");
  ReflexiveTowerReport rep;
  ReflexiveChartReport top = reflexiveRec(s, maxSteps, 0, rep.history);
  rep.terminated = top.terminated;
  rep.steps = top.steps;
  return rep;
}

} // namespace nashlab
