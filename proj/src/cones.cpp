#include "nashlab/cones.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace nashlab {

namespace {

LatticePoint rot2(const LatticePoint& v) {
  // (x,y) -> (-y,x)
  return LatticePoint{std::vector<Int>{-v.x[1], v.x[0]}};
}

LatticePoint cross3(const LatticePoint& a, const LatticePoint& b) {
  return LatticePoint{std::vector<Int>{a.x[1] * b.x[2] - a.x[2] * b.x[1],
                                       a.x[2] * b.x[0] - a.x[0] * b.x[2],
                                       a.x[0] * b.x[1] - a.x[1] * b.x[0]}};
}

std::vector<LatticePoint> primitiveDirections(const std::vector<LatticePoint>& pts) {
  std::set<LatticePoint> dirs;
  for (const auto& p : pts)
    if (!p.isZero()) dirs.insert(primitive(p));
  return {dirs.begin(), dirs.end()};
}

// inward facet normals of the full-dimensional cone spanned by `rays`
std::vector<LatticePoint> facetNormals(int rank,
                                       const std::vector<LatticePoint>& rays) {
  std::set<LatticePoint> out;
  if (rank == 2) {
    for (const auto& r : rays) {
      for (int sgn : {1, -1}) {
        LatticePoint n = Int(sgn) * rot2(r);
        bool allNonneg = true, somePos = false;
        for (const auto& q : rays) {
          Int d = dot(n, q);
          if (d < 0) { allNonneg = false; break; }
          if (d > 0) somePos = true;
        }
        if (allNonneg && somePos) out.insert(primitive(n));
      }
    }
  } else if (rank == 3) {
    for (size_t i = 0; i < rays.size(); ++i) {
      for (size_t j = i + 1; j < rays.size(); ++j) {
        LatticePoint n = cross3(rays[i], rays[j]);
        if (n.isZero()) continue;
        for (int sgn : {1, -1}) {
          LatticePoint m = Int(sgn) * n;
          bool allNonneg = true, somePos = false;
          for (const auto& q : rays) {
            Int d = dot(m, q);
            if (d < 0) { allNonneg = false; break; }
            if (d > 0) somePos = true;
          }
          if (allNonneg && somePos) out.insert(primitive(m));
        }
      }
    }
  } else {
    fail(ErrorKind::Structural, "facet normals only implemented for rank 2 and 3");
  }
  return {out.begin(), out.end()};
}

bool strictlyPositiveOnAll(const LatticePoint& w,
                           const std::vector<LatticePoint>& pts) {
  for (const auto& p : pts)
    if (dot(w, p) <= 0) return false;
  return true;
}

} // namespace

namespace detail {

std::vector<LatticePoint> spanExtremeRays(int rank,
                                          const std::vector<LatticePoint>& pts) {
  std::vector<LatticePoint> dirs = primitiveDirections(pts);
  if (dirs.empty())
    fail(ErrorKind::Degenerate, "cannot span a cone from the zero set");
  IntMat m;
  for (const auto& d : dirs) m.push_back(d.x);
  if (latticeRank(m) != rank)
    fail(ErrorKind::Structural, "point set does not span full rank");

  if (rank == 2) {
    // search for an extreme pair: all directions inside, cone pointed
    for (size_t i = 0; i < dirs.size(); ++i) {
      for (size_t j = 0; j < dirs.size(); ++j) {
        if (i == j) continue;
        Int d = det2(dirs[i], dirs[j]);
        if (d == 0) continue;
        bool ok = true;
        for (const auto& v : dirs) {
          Int alpha = det2(v, dirs[j]), beta = det2(dirs[i], v);
          if (d < 0) { alpha = -alpha; beta = -beta; }
          if (alpha < 0 || beta < 0) { ok = false; break; }
        }
        if (ok) return {dirs[i], dirs[j]};
      }
    }
    fail(ErrorKind::Structural, "spanned cone is not pointed");
  }

  // rank 3: facet description first, then keep rays on >= 2 independent facets
  std::vector<LatticePoint> facets = facetNormals(rank, dirs);
  LatticePoint w{std::vector<Int>(static_cast<size_t>(rank), 0)};
  for (const auto& f : facets) w = w + f;
  if (facets.empty() || !strictlyPositiveOnAll(w, dirs))
    fail(ErrorKind::Structural, "spanned cone is not pointed");
  std::vector<LatticePoint> extremes;
  for (const auto& v : dirs) {
    IntMat onFacets;
    for (const auto& f : facets)
      if (dot(f, v) == 0) onFacets.push_back(f.x);
    if (!onFacets.empty() && latticeRank(onFacets) >= rank - 1)
      extremes.push_back(v);
  }
  if (extremes.size() < 3)
    fail(ErrorKind::Structural, "degenerate rank-3 cone");
  return extremes;
}

bool rawMonoidMembership(const LatticePoint& u,
                         const std::vector<LatticePoint>& gens,
                         const LatticePoint& w, const Cone& spanCone) {
  if (u.isZero()) return true;
  std::map<LatticePoint, bool> memo;
  // depth-first with memo; weights strictly decrease, so this terminates
  std::function<bool(const LatticePoint&)> go = [&](const LatticePoint& v) -> bool {
    if (v.isZero()) return true;
    if (!coneContains(spanCone, v)) return false;
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    memo[v] = false; // cycle guard; weights decrease so no true cycle
    Int wv = dot(w, v);
    bool ok = false;
    for (const auto& g : gens) {
      if (dot(w, g) > wv) continue;
      if (go(v - g)) { ok = true; break; }
    }
    memo[v] = ok;
    return ok;
  };
  return go(u);
}

} // namespace detail

Cone makeCone(int rank, std::vector<LatticePoint> rays) {
  if (rank != 2 && rank != 3)
    fail(ErrorKind::Structural, "cones are supported for rank 2 and 3 only");
  std::vector<LatticePoint> prim;
  std::set<LatticePoint> seen;
  for (auto& r : rays) {
    if (static_cast<int>(r.x.size()) != rank)
      fail(ErrorKind::Structural, "ray rank mismatch");
    if (r.isZero()) fail(ErrorKind::Structural, "zero ray");
    LatticePoint p = primitive(r);
    if (seen.insert(p).second) prim.push_back(p);
  }
  if (rank == 2) {
    if (prim.size() != 2)
      fail(ErrorKind::Structural, "a rank-2 cone needs exactly two distinct rays");
    if (det2(prim[0], prim[1]) == 0)
      fail(ErrorKind::Structural, "cone is not pointed/full-dimensional");
  } else {
    if (prim.size() < 3)
      fail(ErrorKind::Structural, "a rank-3 cone needs at least three rays");
    IntMat m;
    for (const auto& r : prim) m.push_back(r.x);
    if (latticeRank(m) != 3)
      fail(ErrorKind::Structural, "rank-3 cone rays do not span");
  }
  Cone c;
  c.rank = rank;
  c.rays = std::move(prim);
  c.facets = facetNormals(rank, c.rays);
  // pointedness: the dual must contain a functional strictly positive on rays
  LatticePoint w{std::vector<Int>(static_cast<size_t>(rank), 0)};
  for (const auto& f : c.facets) w = w + f;
  if (!strictlyPositiveOnAll(w, c.rays))
    fail(ErrorKind::Structural, "cone is not pointed");
  return c;
}

Cone dualCone(const Cone& c) {
  if (c.rank == 2) {
    // order: normal-of-ray0 first, then normal-of-ray1
    LatticePoint n0, n1;
    for (int sgn : {1, -1}) {
      LatticePoint n = Int(sgn) * LatticePoint{std::vector<Int>{-c.rays[0].x[1], c.rays[0].x[0]}};
      if (dot(n, c.rays[1]) > 0) n0 = primitive(n);
    }
    for (int sgn : {1, -1}) {
      LatticePoint n = Int(sgn) * LatticePoint{std::vector<Int>{-c.rays[1].x[1], c.rays[1].x[0]}};
      if (dot(n, c.rays[0]) > 0) n1 = primitive(n);
    }
    return makeCone(2, {n0, n1});
  }
  return makeCone(c.rank, c.facets);
}

bool coneContains(const Cone& c, const LatticePoint& v) {
  for (const auto& f : c.facets)
    if (dot(f, v) < 0) return false;
  return true;
}

bool coneContainsStrict(const Cone& c, const LatticePoint& v) {
  for (const auto& f : c.facets)
    if (dot(f, v) <= 0) return false;
  return true;
}

namespace {

// lattice points of {a*e1 + b*e2 (+ c*e3) : coefficients in [0,1]} for the
// extreme rays; superset of the irreducible elements of the cone
std::vector<LatticePoint> fundamentalDomainPoints(
    int rank, const std::vector<LatticePoint>& extremes, const Cone& spanCone) {
  std::vector<Int> lo(static_cast<size_t>(rank), 0), hi(static_cast<size_t>(rank), 0);
  for (const auto& e : extremes) {
    for (int i = 0; i < rank; ++i) {
      if (e[i] > 0) hi[static_cast<size_t>(i)] += e[i];
      else lo[static_cast<size_t>(i)] += e[i];
    }
  }
  Int volume = 1;
  for (int i = 0; i < rank; ++i)
    volume *= (hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)] + 1);
  if (volume > 4000000)
    fail(ErrorKind::Budget,
         "Hilbert basis fundamental-domain enumeration too large (box volume " +
             toString(volume) + ")");

  LatticePoint sum{std::vector<Int>(static_cast<size_t>(rank), 0)};
  for (const auto& e : extremes) sum = sum + e;

  std::vector<LatticePoint> pts;
  std::vector<Int> cur(static_cast<size_t>(rank));
  std::function<void(int)> rec = [&](int i) {
    if (i == rank) {
      LatticePoint u{cur};
      if (u.isZero()) return;
      if (!coneContains(spanCone, u)) return;
      // inside the fundamental domain: sum - u also in the cone
      if (!coneContains(spanCone, sum - u)) return;
      pts.push_back(u);
      return;
    }
    for (Int v = lo[static_cast<size_t>(i)]; v <= hi[static_cast<size_t>(i)]; ++v) {
      cur[static_cast<size_t>(i)] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return pts;
}

std::vector<LatticePoint> irreducibleFilter(const std::vector<LatticePoint>& cands,
                                            const Cone& spanCone) {
  std::vector<LatticePoint> out;
  for (const auto& u : cands) {
    bool reducible = false;
    for (const auto& v : cands) {
      if (v == u) continue;
      LatticePoint d = u - v;
      if (d.isZero()) continue;
      if (coneContains(spanCone, d)) { reducible = true; break; }
    }
    if (!reducible) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AffineMonoid finishMonoid(int rank, std::vector<LatticePoint> gens,
                          Cone chartCone, bool saturatedKnown, bool saturatedValue);

} // namespace

AffineMonoid hilbertBasis(const Cone& c) {
  std::vector<LatticePoint> extremes = c.rays;
  if (c.rank == 3) extremes = detail::spanExtremeRays(3, c.rays);
  std::vector<LatticePoint> cands = fundamentalDomainPoints(c.rank, extremes, c);
  for (const auto& e : extremes) cands.push_back(e);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<LatticePoint> hb = irreducibleFilter(cands, c);
  return finishMonoid(c.rank, std::move(hb), dualCone(c), true, true);
}

MonoidPtr hilbertBasisPtr(const Cone& c) {
  return std::make_shared<const AffineMonoid>(hilbertBasis(c));
}

namespace {

AffineMonoid finishMonoid(int rank, std::vector<LatticePoint> gens,
                          Cone chartCone, bool saturatedKnown, bool saturatedValue) {
  AffineMonoid s;
  s.rank = rank;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  s.gens = std::move(gens);
  s.chartCone = std::move(chartCone);
  if (saturatedKnown) {
    s.saturated = saturatedValue;
  } else {
    AffineMonoid sat = hilbertBasis(dualCone(s.chartCone));
    s.saturated = (sat.gens == s.gens);
  }
  return s;
}

} // namespace

AffineMonoid makeAffineMonoid(int rank, std::vector<LatticePoint> gens) {
  std::vector<LatticePoint> g;
  std::set<LatticePoint> seen;
  for (auto& p : gens) {
    if (static_cast<int>(p.x.size()) != rank)
      fail(ErrorKind::Structural, "generator rank mismatch");
    if (p.isZero()) continue;
    if (seen.insert(p).second) g.push_back(p);
  }
  if (g.empty()) fail(ErrorKind::Degenerate, "monoid needs a nonzero generator");
  IntMat m;
  for (const auto& p : g) m.push_back(p.x);
  if (latticeRank(m) != rank)
    fail(ErrorKind::Structural, "monoid generators do not span full rank");

  std::vector<LatticePoint> extremes = detail::spanExtremeRays(rank, g);
  Cone span = makeCone(rank, extremes);
  Cone chart = dualCone(span);
  LatticePoint w{std::vector<Int>(static_cast<size_t>(rank), 0)};
  for (const auto& f : chart.rays) w = w + f;
  if (!strictlyPositiveOnAll(w, g))
    fail(ErrorKind::Structural, "monoid is not pointed");

  // minimalize: drop generators lying in the monoid of the others
  std::sort(g.begin(), g.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < g.size(); ++i) {
      std::vector<LatticePoint> rest;
      rest.reserve(g.size() - 1);
      for (size_t j = 0; j < g.size(); ++j)
        if (j != i) rest.push_back(g[j]);
      if (rest.empty()) break;
      if (detail::rawMonoidMembership(g[i], rest, w, span)) {
        g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return finishMonoid(rank, std::move(g), std::move(chart), false, false);
}

MonoidPtr makeAffineMonoidPtr(int rank, std::vector<LatticePoint> gens) {
  return std::make_shared<const AffineMonoid>(makeAffineMonoid(rank, std::move(gens)));
}

AffineMonoid saturate(const AffineMonoid& s) {
  if (s.saturated) return s;
  return hilbertBasis(dualCone(s.chartCone));
}

LatticePoint positiveFunctional(const AffineMonoid& s) {
  LatticePoint w{std::vector<Int>(static_cast<size_t>(s.rank), 0)};
  for (const auto& r : s.chartCone.rays) w = w + r;
  return w;
}

bool monoidMembership(const LatticePoint& u, const AffineMonoid& s) {
  if (static_cast<int>(u.x.size()) != s.rank)
    fail(ErrorKind::Structural, "membership rank mismatch");
  if (u.isZero()) return true;
  Cone span = dualCone(s.chartCone);
  if (!coneContains(span, u)) return false;
  if (s.saturated) return true;
  return detail::rawMonoidMembership(u, s.gens, positiveFunctional(s), span);
}

bool isSmooth(const AffineMonoid& s) {
  if (static_cast<int>(s.gens.size()) != s.rank) return false;
  Int d = det(s.gens);
  return d == 1 || d == -1;
}

bool monoidEqual(const AffineMonoid& a, const AffineMonoid& b) {
  if (a.rank != b.rank) return false;
  for (const auto& g : a.gens)
    if (!monoidMembership(g, b)) return false;
  for (const auto& g : b.gens)
    if (!monoidMembership(g, a)) return false;
  return true;
}

} // namespace nashlab
