#include "nashlab/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace nashlab {

Int DigitExpansion::value() const {
  Int v = 0, p = 1;
  for (const Int& d : digits) {
    v += d * p;
    p *= base;
  }
  return v;
}

DigitExpansion digits(const Int& i, const Int& base) {
  if (i < 1) fail(ErrorKind::Structural, "digits: i >= 1 required");
  if (base < 1) fail(ErrorKind::Structural, "digits: base >= 1 required");
  DigitExpansion e;
  e.base = base;
  if (base == 1) {
    e.digits = {i};
    return e;
  }
  Int v = i;
  while (v > 0) {
    e.digits.push_back(v % base);
    v /= base;
  }
  return e;
}

namespace {

Int minInt(const Int& a, const Int& b) { return a < b ? a : b; }

// staircase antichain in the two chart-ray coordinates with binary-search
// queries; valid over saturated rank-2 bases where (s,t)-domination is
// exactly base-absorption
class Staircase {
public:
  bool absorbed(const Int& s, const Int& t) const {
    size_t lo = 0, hi = corners_.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (corners_[mid].s <= s) lo = mid + 1;
      else hi = mid;
    }
    if (lo == 0) return false;
    return corners_[lo - 1].t <= t; // t strictly decreasing along the list
  }

  void insert(const Int& s, const Int& t, const LatticePoint& p) {
    if (absorbed(s, t)) return;
    size_t lo = 0, hi = corners_.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (corners_[mid].s < s) lo = mid + 1;
      else hi = mid;
    }
    size_t last = lo;
    while (last < corners_.size() && corners_[last].t >= t) ++last;
    corners_.erase(corners_.begin() + static_cast<std::ptrdiff_t>(lo),
                   corners_.begin() + static_cast<std::ptrdiff_t>(last));
    corners_.insert(corners_.begin() + static_cast<std::ptrdiff_t>(lo),
                    Corner{s, t, p});
  }

  std::vector<LatticePoint> points() const {
    std::vector<LatticePoint> out;
    out.reserve(corners_.size());
    for (const auto& c : corners_) out.push_back(c.p);
    return out;
  }

private:
  struct Corner { Int s, t; LatticePoint p; };
  std::vector<Corner> corners_;
};

// all sums of at most `radius` base generators (with repetition), deduped
std::vector<LatticePoint> monoidShells(const AffineMonoid& base, int radius) {
  std::set<LatticePoint> shells;
  LatticePoint zero{std::vector<Int>(static_cast<size_t>(base.rank), 0)};
  shells.insert(zero);
  std::vector<LatticePoint> frontier{zero};
  for (int r = 0; r < radius; ++r) {
    std::vector<LatticePoint> next;
    for (const auto& f : frontier) {
      for (const auto& g : base.gens) {
        LatticePoint s = f + g;
        if (shells.insert(s).second) next.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  return {shells.begin(), shells.end()};
}

// Exact value of the (n+1)-fold construction over the full module, rank 2.
// Any tuple of module elements is a generator multiset plus a monoid gap;
// a degenerate multiset with difference direction d becomes nondegenerate
// exactly when the gap contains a monoid atom h independent of d (the
// determinant picks up (beta-alpha)*det(d,h)), and a triple concentrated in
// one generator needs two independent atoms. These buckets generate the
// whole module, so no search radius enters.
std::vector<LatticePoint> extendedLogJacobianExact2(const MonomialModule& B) {
  const AffineMonoid& base = *B.base;
  const std::vector<LatticePoint>& G = B.gens;
  const std::vector<LatticePoint>& HB = base.gens;

  if (base.saturated) {
    struct C { Int s, t; const LatticePoint* p; };
    const LatticePoint& v1 = base.chartCone.rays[0];
    const LatticePoint& v2 = base.chartCone.rays[1];
    std::vector<C> cs;
    cs.reserve(G.size());
    for (const auto& g : G) cs.push_back({dot(g, v1), dot(g, v2), &g});
    std::sort(cs.begin(), cs.end(), [](const C& a, const C& b) {
      if (a.s != b.s) return a.s < b.s;
      return a.t < b.t;
    });
    size_t m = cs.size();
    std::vector<Int> minTSuffix(m);
    {
      Int cur = cs[m - 1].t;
      for (size_t i = m; i-- > 0;) {
        cur = minInt(cur, cs[i].t);
        minTSuffix[i] = cur;
      }
    }
    struct H { Int s, t; const LatticePoint* p; };
    std::vector<H> hb;
    hb.reserve(HB.size());
    for (const auto& h : HB) hb.push_back({dot(h, v1), dot(h, v2), &h});

    Staircase stair;
    auto repairPair = [&](const Int& s, const Int& t, const LatticePoint& p,
                          const LatticePoint& d) {
      for (const auto& h : hb) {
        if (det2(*h.p, d) == 0) continue;
        stair.insert(s + h.s, t + h.t, p + *h.p);
      }
    };
    for (size_t i = 0; i < m; ++i) {
      if (stair.absorbed(3 * cs[i].s, 3 * minTSuffix[i])) break;
      for (size_t j = i; j < m; ++j) {
        Int sij = cs[i].s + cs[j].s, tij = cs[i].t + cs[j].t;
        if (stair.absorbed(cs[i].s + 2 * cs[j].s, cs[i].t + 2 * minTSuffix[j]))
          break;
        for (size_t k = j; k < m; ++k) {
          Int s = sij + cs[k].s, t = tij + cs[k].t;
          if (stair.absorbed(sij + cs[k].s, tij + minTSuffix[k])) break;
          if (stair.absorbed(s, t)) continue;
          LatticePoint p = *cs[i].p + *cs[j].p + *cs[k].p;
          if (i == j && j == k) {
            for (size_t a = 0; a < hb.size(); ++a)
              for (size_t b = a + 1; b < hb.size(); ++b) {
                if (det2(*hb[a].p, *hb[b].p) == 0) continue;
                stair.insert(s + hb[a].s + hb[b].s, t + hb[a].t + hb[b].t,
                             p + *hb[a].p + *hb[b].p);
              }
          } else if (i == j) {
            repairPair(s, t, p, *cs[k].p - *cs[i].p);
          } else if (j == k) {
            repairPair(s, t, p, *cs[j].p - *cs[i].p);
          } else {
            LatticePoint d1 = *cs[j].p - *cs[i].p;
            if (det2(d1, *cs[k].p - *cs[i].p) != 0) stair.insert(s, t, p);
            else repairPair(s, t, p, d1);
          }
        }
      }
    }
    return stair.points();
  }

  // unsaturated rank 2: same buckets, generic minimalization afterwards
  if (G.size() > 60)
    fail(ErrorKind::Budget,
         "extendedLogJacobian: unsaturated chart with too many generators");
  std::vector<LatticePoint> pts;
  auto repair = [&](const LatticePoint& p, const LatticePoint& d) {
    for (const auto& h : HB)
      if (det2(h, d) != 0) pts.push_back(p + h);
  };
  for (size_t i = 0; i < G.size(); ++i) {
    for (size_t j = i; j < G.size(); ++j) {
      for (size_t k = j; k < G.size(); ++k) {
        LatticePoint p = G[i] + G[j] + G[k];
        if (i == j && j == k) {
          for (size_t a = 0; a < HB.size(); ++a)
            for (size_t b = a + 1; b < HB.size(); ++b)
              if (det2(HB[a], HB[b]) != 0) pts.push_back(p + HB[a] + HB[b]);
        } else if (i == j) {
          repair(p, G[k] - G[i]);
        } else if (j == k) {
          repair(p, G[j] - G[i]);
        } else {
          LatticePoint d1 = G[j] - G[i];
          if (det2(d1, G[k] - G[i]) != 0) pts.push_back(p);
          else repair(p, d1);
        }
      }
    }
  }
  return pts;
}

std::vector<LatticePoint> extendedLogJacobianRaw(const MonomialModule& B,
                                                 int radius) {
  const AffineMonoid& base = *B.base;
  int n = base.rank;

  std::set<LatticePoint> candSet;
  for (const auto& g : B.gens)
    for (const auto& s : monoidShells(base, radius)) candSet.insert(g + s);
  std::vector<LatticePoint> cands(candSet.begin(), candSet.end());

  if (base.saturated && n == 2) {
    struct C { Int s, t; LatticePoint p; };
    std::vector<C> cs;
    cs.reserve(cands.size());
    const LatticePoint& v1 = base.chartCone.rays[0];
    const LatticePoint& v2 = base.chartCone.rays[1];
    for (auto& p : cands) cs.push_back({dot(p, v1), dot(p, v2), std::move(p)});
    std::sort(cs.begin(), cs.end(), [](const C& a, const C& b) {
      if (a.s != b.s) return a.s < b.s;
      return a.t < b.t;
    });
    size_t m = cs.size();
    // smallest t over each suffix of the s-sorted list; with it the
    // absorbed-region (upward closed in (s,t)) gives exact loop breaks
    std::vector<Int> minTSuffix(m);
    {
      Int cur = cs[m - 1].t;
      for (size_t i = m; i-- > 0;) {
        cur = minInt(cur, cs[i].t);
        minTSuffix[i] = cur;
      }
    }

    Staircase stair;
    auto tryTriple = [&](const C& a, const C& b, const C& c) {
      Int s = a.s + b.s + c.s, t = a.t + b.t + c.t;
      if (stair.absorbed(s, t)) return;
      if (det2(b.p - a.p, c.p - a.p) == 0) return;
      stair.insert(s, t, a.p + b.p + c.p);
    };

    // seed with the low-staircase frontier so the breaks bite early
    {
      std::vector<size_t> frontier;
      std::optional<Int> best;
      for (size_t i = 0; i < m; ++i) {
        if (best && cs[i].t >= *best) continue;
        best = cs[i].t;
        frontier.push_back(i);
        if (frontier.size() > 48) break;
      }
      for (size_t a = 0; a < frontier.size(); ++a)
        for (size_t b = a + 1; b < frontier.size(); ++b)
          for (size_t c = b + 1; c < frontier.size(); ++c)
            tryTriple(cs[frontier[a]], cs[frontier[b]], cs[frontier[c]]);
    }

    for (size_t i = 0; i < m; ++i) {
      // every later element has s >= cs[i].s and t >= minTSuffix[i]
      if (stair.absorbed(3 * cs[i].s, 3 * minTSuffix[i])) break;
      for (size_t j = i + 1; j < m; ++j) {
        Int sij = cs[i].s + cs[j].s, tij = cs[i].t + cs[j].t;
        if (stair.absorbed(cs[i].s + 2 * cs[j].s, cs[i].t + 2 * minTSuffix[j]))
          break;
        if (stair.absorbed(sij + cs[j].s, tij + minTSuffix[j])) continue;
        LatticePoint dij = cs[j].p - cs[i].p;
        for (size_t k = j + 1; k < m; ++k) {
          Int s = sij + cs[k].s, t = tij + cs[k].t;
          if (stair.absorbed(sij + cs[k].s, tij + minTSuffix[k])) break;
          if (stair.absorbed(s, t)) continue;
          if (det2(dij, cs[k].p - cs[i].p) == 0) continue;
          stair.insert(s, t, cs[i].p + cs[j].p + cs[k].p);
        }
      }
    }
    return stair.points();
  }

  // general route (rank 3 or unsaturated base): enumerate (n+1)-subsets
  if (cands.size() > 90)
    fail(ErrorKind::Budget,
         "extendedLogJacobian: candidate set too large for the general route (" +
             std::to_string(cands.size()) + " points)");
  std::vector<LatticePoint> sums;
  std::vector<size_t> idx(static_cast<size_t>(n) + 1);
  std::function<void(size_t, int)> rec = [&](size_t start, int chosen) {
    if (chosen == n + 1) {
      std::vector<LatticePoint> rows;
      for (int q = 1; q <= n; ++q)
        rows.push_back(cands[idx[static_cast<size_t>(q)]] - cands[idx[0]]);
      if (det(rows) != 0) {
        LatticePoint sum = cands[idx[0]];
        for (int q = 1; q <= n; ++q) sum = sum + cands[idx[static_cast<size_t>(q)]];
        sums.push_back(std::move(sum));
      }
      return;
    }
    for (size_t i = start; i < cands.size(); ++i) {
      idx[static_cast<size_t>(chosen)] = i;
      rec(i + 1, chosen + 1);
    }
  };
  rec(0, 0);
  return sums;
}

} // namespace

MonomialModule extendedLogJacobian(const MonomialModule& B, int radius) {
  if (radius < 0) fail(ErrorKind::Structural, "extendedLogJacobian: radius >= 0");
  std::vector<LatticePoint> sums = extendedLogJacobianRaw(B, radius);
  if (sums.empty())
    fail(ErrorKind::Degenerate,
         "extendedLogJacobian: no affinely independent tuples at radius " +
             std::to_string(radius));
  return makeModule(B.base, std::move(sums));
}

MonomialModule extendedLogJacobianStable(const MonomialModule& B, int maxRadius,
                                         int* usedRadius) {
  if (B.base->rank == 2) {
    // the closed form is the radius-infinity value; report it as exact
    std::vector<LatticePoint> pts = extendedLogJacobianExact2(B);
    if (pts.empty())
      fail(ErrorKind::Degenerate, "extendedLogJacobian: degenerate module");
    if (usedRadius) *usedRadius = -1;
    return makeModule(B.base, std::move(pts));
  }
  std::vector<std::pair<int, MonomialModule>> history;
  for (int r = 0; r <= maxRadius; ++r) {
    std::vector<LatticePoint> sums = extendedLogJacobianRaw(B, r);
    if (sums.empty()) continue;
    history.emplace_back(r, makeModule(B.base, std::move(sums)));
    size_t h = history.size();
    if (h >= 3 && history[h - 1].second.gens == history[h - 2].second.gens &&
        history[h - 2].second.gens == history[h - 3].second.gens) {
      if (usedRadius) *usedRadius = history[h - 3].first;
      return history[h - 3].second;
    }
  }
  std::string diag = "extendedLogJacobian: no stabilization up to radius " +
                     std::to_string(maxRadius);
  if (history.size() >= 2) {
    diag += "; last outputs " + history[history.size() - 2].second.str() +
            " then " + history.back().second.str();
  }
  fail(ErrorKind::Budget, diag);
}

SheafTowerCache::SheafTowerCache(MonoidPtr chart, int maxRadius)
    : chart_(std::move(chart)), maxRadius_(maxRadius) {}

const MonomialModule& SheafTowerCache::power(int j) {
  if (j < 0) fail(ErrorKind::Structural, "SheafTowerCache: negative level");
  while (static_cast<int>(powers_.size()) <= j) {
    int lvl = static_cast<int>(powers_.size());
    if (lvl == 0) {
      powers_.push_back(logJacobian(*chart_));
      radii_.push_back(0);
      continue;
    }
    // F at index 1 + (n+2) + ... + (n+2)^{lvl-1}: all digits are one
    MonomialModule arg = powers_[0];
    for (int t = 1; t < lvl; ++t) arg = product(arg, powers_[static_cast<size_t>(t)]);
    int used = 0;
    powers_.push_back(extendedLogJacobianStable(arg, maxRadius_, &used));
    radii_.push_back(used);
  }
  return powers_[static_cast<size_t>(j)];
}

int SheafTowerCache::radiusUsed(int j) const {
  return radii_.at(static_cast<size_t>(j));
}

MonomialModule sheafF(SheafTowerCache& cache, const Int& i) {
  if (i < 0) fail(ErrorKind::Structural, "sheafF: i >= 0");
  if (i == 0) return unitModule(cache.chart());
  DigitExpansion e = digits(i, cache.nPlus2());
  MonomialModule out = unitModule(cache.chart());
  for (size_t k = 0; k < e.digits.size(); ++k) {
    if (e.digits[k] == 0) continue;
    out = product(out, modulePower(cache.power(static_cast<int>(k)), e.digits[k]));
  }
  return out;
}

bool carryingSurjective(SheafTowerCache& cache, int j) {
  MonomialModule lhs = modulePower(cache.power(j), cache.nPlus2());
  return moduleEqual(lhs, cache.power(j + 1));
}

FiniteTypeReport finiteTypeProbe(SheafTowerCache& cache, int maxLevel) {
  // maxLevel bounds the highest cached power the probe may touch
  FiniteTypeReport rep;
  rep.levelsChecked = maxLevel;
  for (int j = 0; j + 2 <= maxLevel; ++j) {
    if (carryingSurjective(cache, j) && carryingSurjective(cache, j + 1)) {
      rep.firstStableJ = j;
      break;
    }
  }
  Int sq = cache.nPlus2() * cache.nPlus2();
  for (int j = 0; j + 2 <= maxLevel; ++j) {
    if (moduleEqual(modulePower(cache.power(j), sq), cache.power(j + 2))) {
      rep.firstCompositeJ = j;
      break;
    }
  }
  return rep;
}

namespace {

// X_{(N+2)^i}[N] with the seed sheaf O: the F-power is trivial and the rest
// is prod_{t<i} E_{(n+2)^t}^{(N+2)^{i-1-t}}
MonomialModule xPower(SheafTowerCache& cache, int i, int N) {
  MonomialModule x = unitModule(cache.chart());
  Int np2 = Int(N) + 2;
  for (int t = 0; t < i; ++t) {
    Int e = boost::multiprecision::pow(np2, static_cast<unsigned>(i - 1 - t));
    x = product(x, modulePower(cache.power(t), e));
  }
  return x;
}

MonomialModule xModule(SheafTowerCache& cache, const Int& j, int N) {
  DigitExpansion e = digits(j, Int(N) + 2);
  MonomialModule x = unitModule(cache.chart());
  for (size_t k = 0; k < e.digits.size(); ++k) {
    if (e.digits[k] == 0) continue;
    x = product(x, modulePower(xPower(cache, static_cast<int>(k), N), e.digits[k]));
  }
  return x;
}

// k results by replacing N with n in the base-(N+2) expansion of j
Int replacedIndex(const DigitExpansion& e, const Int& nPlus2) {
  Int k = 0, p = 1;
  for (const Int& d : e.digits) {
    k += d * p;
    p *= nPlus2;
  }
  return k;
}

MonomialModule homChainLimit(SheafTowerCache& cache, const MonomialModule& X,
                             const MonomialModule& Fk, int N, int sBudget) {
  int n = cache.chart()->rank;
  int s0 = std::max(0, -N);
  std::optional<MonomialModule> prev;
  for (int s = s0; s <= s0 + sBudget; ++s) {
    MonomialModule lhs = modulePower(X, Int(n) + s);
    MonomialModule rhs = product(modulePower(X, Int(N) + s), Fk);
    MonomialModule h = homModule(lhs, rhs);
    if (prev && moduleEqual(*prev, h)) return h;
    prev = std::move(h);
  }
  fail(ErrorKind::Budget, "filtrationModule: Hom chain did not stabilize");
}

} // namespace

MonomialModule filtrationModule(SheafTowerCache& cache, const Int& j, int N,
                                int sBudget, int maxShapeLevel) {
  int n = cache.chart()->rank;
  if (n != 2)
    fail(ErrorKind::Precondition, "filtrationModule: rank-2 Hom machinery only");
  if (N < -1 || N > n + 1)
    fail(ErrorKind::Precondition, "filtrationModule: -1 <= N <= n+1");
  if (j < 1) fail(ErrorKind::Structural, "filtrationModule: j >= 1");

  if (N >= 0) {
    DigitExpansion e = digits(j, Int(N) + 2);
    MonomialModule X = xModule(cache, j, N);
    MonomialModule Fk = sheafF(cache, replacedIndex(e, cache.nPlus2()));
    return homChainLimit(cache, X, Fk, N, sBudget);
  }

  // N = -1: join over base-1 expansion shapes (multisets of levels)
  if (j > 24)
    fail(ErrorKind::Budget, "filtrationModule: base-1 expansion of j > 24");
  long jl = j.convert_to<long>();
  std::vector<LatticePoint> joined;
  std::vector<int> shape(static_cast<size_t>(jl));
  std::function<void(int, int)> rec = [&](int pos, int minLevel) {
    if (pos == jl) {
      MonomialModule X = unitModule(cache.chart());
      Int k = 0;
      for (int lvl : shape) {
        X = product(X, xPower(cache, lvl, -1)); // X_{1^lvl}[-1] = prod_{t<lvl} E_t
        k += boost::multiprecision::pow(cache.nPlus2(), static_cast<unsigned>(lvl));
      }
      MonomialModule Fk = sheafF(cache, k);
      MonomialModule h = homChainLimit(cache, X, Fk, -1, sBudget);
      joined.insert(joined.end(), h.gens.begin(), h.gens.end());
      return;
    }
    for (int lvl = minLevel; lvl <= maxShapeLevel; ++lvl) {
      shape[static_cast<size_t>(pos)] = lvl;
      rec(pos + 1, lvl);
    }
  };
  rec(0, 0);
  return makeModule(cache.chart(), std::move(joined));
}

MonomialModule grFormula(SheafTowerCache& cache, int i) {
  if (!cache.chart()->saturated)
    fail(ErrorKind::Precondition, "grFormula: saturated chart required");
  Int p = boost::multiprecision::pow(cache.nPlus2(), static_cast<unsigned>(i));
  MonomialModule a = sheafF(cache, p - 1);
  MonomialModule b = sheafF(cache, p);
  return integralClosure(homModule(a, b));
}

GrStabilization grFormulaStable(SheafTowerCache& cache, int maxI) {
  std::optional<MonomialModule> prev;
  for (int i = 1; i <= maxI; ++i) {
    MonomialModule g = grFormula(cache, i);
    if (prev && moduleEqual(*prev, g)) return {*prev, i - 1};
    prev = std::move(g);
  }
  fail(ErrorKind::Budget, "grFormula did not stabilize within the index budget");
}

} // namespace nashlab
