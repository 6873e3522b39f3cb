#include "nashlab/modules.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace nashlab {

namespace {

void requireSameBase(const MonomialModule& A, const MonomialModule& B,
                     const char* op) {
  if (A.base == B.base) return;
  if (*A.base == *B.base) return;
  fail(ErrorKind::Structural, std::string(op) + ": base monoid mismatch");
}

bool saturatedRank2(const AffineMonoid& s) {
  return s.rank == 2 && s.saturated;
}

// pairing coordinates along the two chart-cone rays; injective for rank 2
std::pair<Int, Int> stCoords(const AffineMonoid& base, const LatticePoint& u) {
  return {dot(u, base.chartCone.rays[0]), dot(u, base.chartCone.rays[1])};
}

// u - g in the saturated base iff all chart-ray pairings of the gap are >= 0
bool dominatesSat(const AffineMonoid& base, const LatticePoint& g,
                  const LatticePoint& u) {
  for (const auto& r : base.chartCone.rays)
    if (dot(u - g, r) < 0) return false;
  return true;
}

Int minInt(const Int& a, const Int& b) { return a < b ? a : b; }
Int maxInt(const Int& a, const Int& b) { return a < b ? b : a; }

std::vector<LatticePoint> antichainMinimalizeSat2(const AffineMonoid& base,
                                                  std::vector<LatticePoint> pts) {
  struct Item { Int s, t; LatticePoint p; };
  std::vector<Item> items;
  items.reserve(pts.size());
  for (auto& p : pts) {
    auto [s, t] = stCoords(base, p);
    items.push_back({std::move(s), std::move(t), std::move(p)});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.s != b.s) return a.s < b.s;
    return a.t < b.t;
  });
  std::vector<LatticePoint> out;
  std::optional<Int> minT;
  for (auto& it : items) {
    if (minT && it.t >= *minT) continue;
    minT = it.t;
    out.push_back(std::move(it.p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> minimalizeGeneral(const AffineMonoid& base,
                                            std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<LatticePoint> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < pts.size() && !dominated; ++j) {
      if (i == j) continue;
      LatticePoint d = pts[i] - pts[j];
      if (d.isZero()) continue;
      if (monoidMembership(d, base)) dominated = true;
    }
    if (!dominated) out.push_back(pts[i]);
  }
  return out;
}

std::vector<LatticePoint> minimalize(const AffineMonoid& base,
                                     std::vector<LatticePoint> pts) {
  if (saturatedRank2(base)) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return antichainMinimalizeSat2(base, std::move(pts));
  }
  return minimalizeGeneral(base, std::move(pts));
}

// integer vector with <sigma, v> = 1 for primitive rank-2 v
LatticePoint unitPairingVector(const LatticePoint& v) {
  Int a = v.x[0], b = v.x[1];
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  Int g = old_r; // +-1, v is primitive
  return LatticePoint{std::vector<Int>{old_s / g, old_t / g}};
}

// primitive vector with <w, v> = 0 (rank 2)
LatticePoint orthPairingVector(const LatticePoint& v) {
  return primitive(LatticePoint{std::vector<Int>{-v.x[1], v.x[0]}});
}

Int ceilDivInt(const Int& a, const Int& b) {
  // b > 0
  Int q = a / b;
  if (a % b > 0) q += 1;
  return q;
}

Int ceilRat(const Rat& q) {
  Int n = ratNum(q), d = ratDen(q);
  Int r = n / d;
  if (n % d > 0) r += 1;
  return r;
}

} // namespace

std::string MonomialModule::str() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) os << ",";
    os << gens[i].str();
  }
  os << "}";
  return os.str();
}

MonomialModule makeModule(MonoidPtr base, std::vector<LatticePoint> gens) {
  if (!base) fail(ErrorKind::Structural, "module without a base monoid");
  if (gens.empty()) fail(ErrorKind::Structural, "module needs a generator");
  for (const auto& g : gens)
    if (static_cast<int>(g.x.size()) != base->rank)
      fail(ErrorKind::Structural, "module generator rank mismatch");
  MonomialModule m;
  m.base = std::move(base);
  m.gens = minimalize(*m.base, std::move(gens));
  return m;
}

MonomialModule unitModule(MonoidPtr base) {
  LatticePoint zero{std::vector<Int>(static_cast<size_t>(base->rank), 0)};
  return makeModule(std::move(base), {zero});
}

bool member(const LatticePoint& u, const MonomialModule& A) {
  if (static_cast<int>(u.x.size()) != A.rank())
    fail(ErrorKind::Structural, "member: rank mismatch");
  if (A.base->saturated) {
    for (const auto& g : A.gens)
      if (dominatesSat(*A.base, g, u)) return true;
    return false;
  }
  for (const auto& g : A.gens)
    if (monoidMembership(u - g, *A.base)) return true;
  return false;
}

bool moduleSubset(const MonomialModule& A, const MonomialModule& B) {
  requireSameBase(A, B, "moduleSubset");
  for (const auto& g : A.gens)
    if (!member(g, B)) return false;
  return true;
}

bool moduleEqual(const MonomialModule& A, const MonomialModule& B) {
  return moduleSubset(A, B) && moduleSubset(B, A);
}

MonomialModule product(const MonomialModule& A, const MonomialModule& B) {
  requireSameBase(A, B, "product");
  std::vector<LatticePoint> sums;
  sums.reserve(A.gens.size() * B.gens.size());
  for (const auto& a : A.gens)
    for (const auto& b : B.gens) sums.push_back(a + b);
  return makeModule(A.base, std::move(sums));
}

MonomialModule modulePower(const MonomialModule& A, const Int& k) {
  if (k < 0) fail(ErrorKind::Structural, "modulePower: negative exponent");
  if (k == 0) return unitModule(A.base);
  MonomialModule r = A;
  for (Int i = 1; i < k; ++i) r = product(r, A);
  return r;
}

Int ordAlong(const MonomialModule& A, const LatticePoint& v) {
  if (!coneContains(A.base->chartCone, v))
    fail(ErrorKind::Precondition, "ordAlong: direction not in the chart cone");
  Int best = dot(A.gens[0], v);
  for (size_t i = 1; i < A.gens.size(); ++i)
    best = minInt(best, dot(A.gens[i], v));
  return best;
}

std::optional<LatticePoint> isPrincipal(const MonomialModule& A) {
  if (A.gens.size() == 1) return A.gens[0];
  return std::nullopt;
}

std::vector<LatticePoint> minimalPointsOfRegion(const AffineMonoid& base,
                                                const std::vector<RayConstraint>& cs) {
  if (!saturatedRank2(base))
    fail(ErrorKind::Precondition,
         "minimalPointsOfRegion: rank-2 saturated chart required");
  const LatticePoint& v1 = base.chartCone.rays[0];
  const LatticePoint& v2 = base.chartCone.rays[1];

  std::optional<Int> h1, h2;
  std::map<LatticePoint, Int> walls;
  for (const auto& c : cs) {
    LatticePoint r = primitive(c.ray);
    if (r == v1) {
      h1 = h1 ? maxInt(*h1, c.bound) : c.bound;
    } else if (r == v2) {
      h2 = h2 ? maxInt(*h2, c.bound) : c.bound;
    } else {
      if (!coneContainsStrict(base.chartCone, r))
        fail(ErrorKind::Structural,
             "minimalPointsOfRegion: constraint ray outside the chart cone");
      auto it = walls.find(r);
      if (it == walls.end()) walls.emplace(r, c.bound);
      else it->second = maxInt(it->second, c.bound);
    }
  }
  if (!h1 || !h2)
    fail(ErrorKind::Structural,
         "minimalPointsOfRegion: both chart-cone rays need a bound");

  LatticePoint sigma = unitPairingVector(v1);
  LatticePoint w = orthPairingVector(v1);
  Int delta = dot(w, v2);
  if (delta < 0) { w = -w; delta = -delta; }

  // past sHigh the only binding constraint on an s-line is the v2 bound,
  // so deeper levels repeat with period <P, v1> for P orthogonal to v2
  Int gamma = det2(v1, v2);
  Int sLo = *h1;
  Int sHigh = sLo;
  for (const auto& [r, h] : walls) {
    Rat alpha = Rat(det2(r, v2)) / Rat(gamma);
    Rat beta = Rat(det2(v1, r)) / Rat(gamma);
    Rat sj = (Rat(h) - beta * Rat(*h2)) / alpha;
    sHigh = maxInt(sHigh, ceilRat(sj));
  }
  LatticePoint period = orthPairingVector(v2);
  Int periodLen = dot(period, v1);
  if (periodLen < 0) periodLen = -periodLen;
  sHigh += periodLen;

  std::vector<LatticePoint> pts;
  for (Int s = sLo; s <= sHigh; ++s) {
    LatticePoint u0 = s * sigma;
    Int k = ceilDivInt(*h2 - dot(u0, v2), delta);
    for (const auto& [r, h] : walls) {
      Int cr = dot(w, r); // > 0 for interior rays
      k = maxInt(k, ceilDivInt(h - dot(u0, r), cr));
    }
    pts.push_back(u0 + k * w);
  }
  return antichainMinimalizeSat2(base, std::move(pts));
}

namespace {

struct Corner { Int s, t; };

std::vector<Corner> cornerAntichain(std::vector<Corner> cs) {
  std::sort(cs.begin(), cs.end(), [](const Corner& a, const Corner& b) {
    if (a.s != b.s) return a.s < b.s;
    return a.t < b.t;
  });
  std::vector<Corner> out;
  std::optional<Int> minT;
  for (auto& c : cs) {
    if (minT && c.t >= *minT) continue;
    minT = c.t;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Corner> cornerIntersect(const std::vector<Corner>& a,
                                    const std::vector<Corner>& b) {
  std::vector<Corner> joined;
  joined.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b)
      joined.push_back({maxInt(x.s, y.s), maxInt(x.t, y.t)});
  return cornerAntichain(std::move(joined));
}

MonomialModule homStaircase(const MonomialModule& A, const MonomialModule& B) {
  const AffineMonoid& base = *A.base;
  std::vector<Corner> bCorners;
  for (const auto& g : B.gens) {
    auto [s, t] = stCoords(base, g);
    bCorners.push_back({s, t});
  }
  bCorners = cornerAntichain(std::move(bCorners));
  std::vector<Corner> cur;
  bool first = true;
  for (const auto& a : A.gens) {
    auto [sa, ta] = stCoords(base, a);
    std::vector<Corner> shifted;
    shifted.reserve(bCorners.size());
    for (const auto& c : bCorners) shifted.push_back({c.s - sa, c.t - ta});
    cur = first ? std::move(shifted) : cornerIntersect(cur, shifted);
    first = false;
  }
  std::vector<LatticePoint> gens;
  for (const auto& c : cur) {
    auto pts = minimalPointsOfRegion(
        base, {{base.chartCone.rays[0], c.s}, {base.chartCone.rays[1], c.t}});
    gens.insert(gens.end(), pts.begin(), pts.end());
  }
  return makeModule(A.base, std::move(gens));
}

// bounded expanding box search with a stabilization certificate; used when
// the staircase route does not apply (rank 3 or unsaturated base)
MonomialModule homSearch(const MonomialModule& A, const MonomialModule& B) {
  const AffineMonoid& base = *A.base;
  int rank = base.rank;
  auto inHom = [&](const LatticePoint& u) {
    for (const auto& a : A.gens)
      if (!member(u + a, B)) return false;
    return true;
  };

  std::vector<Int> lo(static_cast<size_t>(rank)), hi(static_cast<size_t>(rank));
  bool first = true;
  for (const auto& b : B.gens) {
    for (const auto& a : A.gens) {
      LatticePoint d = b - a;
      for (int i = 0; i < rank; ++i) {
        size_t ii = static_cast<size_t>(i);
        if (first || d[i] < lo[ii]) lo[ii] = d[i];
        if (first || d[i] > hi[ii]) hi[ii] = d[i];
      }
      first = false;
    }
  }

  std::vector<LatticePoint> prev;
  for (Int r = 1; r <= 12; ++r) {
    Int volume = 1;
    for (size_t i = 0; i < static_cast<size_t>(rank); ++i)
      volume *= hi[i] - lo[i] + 2 * r + 1;
    if (volume > 3000000)
      fail(ErrorKind::Budget, "homModule search box too large (volume " +
                                  toString(volume) + ")");
    std::vector<LatticePoint> found;
    std::vector<Int> cur(static_cast<size_t>(rank));
    std::function<void(int)> rec = [&](int i) {
      if (i == rank) {
        LatticePoint u{cur};
        if (inHom(u)) found.push_back(u);
        return;
      }
      size_t ii = static_cast<size_t>(i);
      for (Int v = lo[ii] - r; v <= hi[ii] + r; ++v) {
        cur[ii] = v;
        rec(i + 1);
      }
    };
    rec(0);
    if (found.empty()) continue;
    std::vector<LatticePoint> mins = minimalizeGeneral(base, std::move(found));
    if (!prev.empty() && mins == prev)
      return makeModule(A.base, std::move(mins));
    prev = std::move(mins);
  }
  fail(ErrorKind::Budget,
       "homModule: no stabilization within the search budget; last minimal set "
       "had " + std::to_string(prev.size()) + " generators");
}

} // namespace

MonomialModule homModule(const MonomialModule& A, const MonomialModule& B) {
  requireSameBase(A, B, "homModule");
  if (saturatedRank2(*A.base)) return homStaircase(A, B);
  return homSearch(A, B);
}

MonomialModule reflexiveHull(const MonomialModule& A, bool viaSaturation) {
  MonoidPtr base = A.base;
  if (!base->saturated) {
    if (!viaSaturation)
      fail(ErrorKind::Precondition,
           "reflexiveHull: base not saturated; reflexivication is defined via "
           "the rays of the normalization (pass viaSaturation to opt in)");
    base = std::make_shared<const AffineMonoid>(saturate(*base));
  }
  if (base->rank != 2)
    fail(ErrorKind::Precondition, "reflexiveHull: rank-2 charts only");
  std::vector<RayConstraint> cs;
  for (const auto& r : base->chartCone.rays) {
    Int h = dot(A.gens[0], r);
    for (const auto& g : A.gens) h = minInt(h, dot(g, r));
    cs.push_back({r, h});
  }
  return makeModule(base, minimalPointsOfRegion(*base, cs));
}

MonomialModule integralClosure(const MonomialModule& A) {
  if (!A.base->saturated)
    fail(ErrorKind::Precondition, "integralClosure: base must be saturated");
  if (A.base->rank != 2)
    fail(ErrorKind::Precondition, "integralClosure: rank-2 charts only");
  auto pieces = supportSubdivision(A.base->chartCone, A.gens);
  std::vector<RayConstraint> cs;
  auto addRay = [&](const LatticePoint& r) {
    Int h = dot(A.gens[0], r);
    for (const auto& g : A.gens) h = minInt(h, dot(g, r));
    cs.push_back({r, h});
  };
  addRay(pieces.front().left);
  for (const auto& p : pieces) addRay(p.right);
  return makeModule(A.base, minimalPointsOfRegion(*A.base, cs));
}

std::vector<SupportPiece> supportSubdivision(const Cone& sigma,
                                             const std::vector<LatticePoint>& gens) {
  if (sigma.rank != 2)
    fail(ErrorKind::Precondition, "supportSubdivision: rank 2 only");
  if (gens.empty()) fail(ErrorKind::Structural, "supportSubdivision: no generators");
  const LatticePoint& v1 = sigma.rays[0];
  const LatticePoint& v2 = sigma.rays[1];
  Int orient = det2(v1, v2);
  auto before = [&](const LatticePoint& a, const LatticePoint& b) {
    Int d = det2(a, b);
    return orient > 0 ? d > 0 : d < 0;
  };

  // minimizer at v1, ties broken toward v2
  const LatticePoint* cur = &gens[0];
  for (const auto& g : gens) {
    Int d1 = dot(g, v1) - dot(*cur, v1);
    if (d1 < 0 || (d1 == 0 && dot(g, v2) < dot(*cur, v2))) cur = &g;
  }

  std::vector<SupportPiece> out;
  LatticePoint ray = v1;
  size_t guard = gens.size() + 2;
  while (guard-- > 0) {
    const LatticePoint* nextGen = nullptr;
    LatticePoint wall;
    for (const auto& g : gens) {
      if (g == *cur) continue;
      LatticePoint d = g - *cur;
      Int a = dot(d, ray);
      Int b = dot(d, v2);
      if (b >= 0) continue; // never overtakes the current vertex
      if (a <= 0) continue; // resolved at the current ray by the tie-break
      LatticePoint w = primitive(a * v2 + (-b) * ray);
      if (!nextGen || before(w, wall)) {
        wall = w;
        nextGen = &g;
      }
    }
    if (!nextGen) {
      out.push_back({ray, v2, *cur});
      return out;
    }
    out.push_back({ray, wall, *cur});
    const LatticePoint* best = nullptr;
    Int bestVal;
    for (const auto& g : gens) {
      Int val = dot(g, wall);
      if (!best || val < bestVal ||
          (val == bestVal && dot(g, v2) < dot(*best, v2))) {
        best = &g;
        bestVal = val;
      }
    }
    cur = best;
    ray = wall;
  }
  fail(ErrorKind::Structural, "supportSubdivision: walk failed to terminate");
}

} // namespace nashlab
