#include "nashlab/oracles.hpp"

#include <algorithm>

namespace nashlab {

namespace {

Int absInt(const Int& a) { return a < 0 ? Int(-a) : a; }
Int maxInt(const Int& a, const Int& b) { return a < b ? b : a; }

// D(x,y) > 0 means y lies strictly on the far-ray side of x in the sweep
struct Orient {
  Int sgn;
  Int operator()(const LatticePoint& a, const LatticePoint& b) const {
    return sgn * det2(a, b);
  }
};

LatticePoint solveUnitDet(const Orient& D, const LatticePoint& u) {
  // find z with D(u, z) = 1; the equation is (-s*u2)*z1 + (s*u1)*z2 = 1
  Int a = -D.sgn * u.x[1], b = D.sgn * u.x[0];
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  Int g = old_r; // +-1 because u is primitive
  return LatticePoint{std::vector<Int>{old_s / g, old_t / g}};
}

} // namespace

HJResolution hjResolve(const Cone& c) {
  if (c.rank != 2) fail(ErrorKind::Precondition, "hjResolve: rank 2 only");
  const LatticePoint& v1 = c.rays[0];
  const LatticePoint& v2 = c.rays[1];
  Orient D{det2(v1, v2) > 0 ? Int(1) : Int(-1)};

  std::vector<LatticePoint> rays{v1};
  LatticePoint u = v1;
  while (true) {
    Int d = D(u, v2);
    if (d == 0) break;
    LatticePoint z0 = solveUnitDet(D, u);
    // walk z0 + k*u to the smallest nonnegative D(., v2): the next lattice
    // point on the boundary of conv(cone ∩ Z^2 \ 0)
    Int dz = D(z0, v2);
    Int k = (-dz) / d;
    if ((-dz) % d > 0) k += 1;
    LatticePoint z = z0 + k * u;
    if (D(z, v2) == 0) {
      rays.push_back(v2);
      break;
    }
    rays.push_back(z);
    u = z;
  }
  if (!(rays.back() == v2)) rays.push_back(v2);
  return {std::move(rays)};
}

namespace {

// independent minimal-generator scan for {u : <u, v> >= bound, v in rays},
// certified by re-scanning a strictly larger box
std::vector<LatticePoint> boxScanMinimal(const Cone& sigma,
                                         const std::vector<LatticePoint>& rays,
                                         const Int& bound) {
  Int L = 2;
  for (size_t a = 0; a < rays.size(); ++a) {
    for (size_t b = a + 1; b < rays.size(); ++b) {
      Int d = det2(rays[a], rays[b]);
      if (d == 0) continue;
      Int z1num = bound * (rays[b].x[1] - rays[a].x[1]);
      Int z2num = bound * (rays[a].x[0] - rays[b].x[0]);
      L = maxInt(L, absInt(z1num / d) + 1);
      L = maxInt(L, absInt(z2num / d) + 1);
    }
  }
  for (const auto& r : rays) L += absInt(r.x[0]) + absInt(r.x[1]);

  auto scan = [&](const Int& lim) {
    std::vector<LatticePoint> found;
    for (Int x = -lim; x <= lim; ++x) {
      for (Int y = -lim; y <= lim; ++y) {
        LatticePoint u{std::vector<Int>{x, y}};
        bool in = true;
        for (const auto& r : rays)
          if (dot(u, r) < bound) { in = false; break; }
        if (in) found.push_back(std::move(u));
      }
    }
    std::vector<LatticePoint> mins;
    for (const auto& u : found) {
      bool dominated = false;
      for (const auto& v : found) {
        if (v == u) continue;
        LatticePoint gap = u - v;
        bool inDual = true;
        for (const auto& r : sigma.rays)
          if (dot(gap, r) < 0) { inDual = false; break; }
        if (inDual) { dominated = true; break; }
      }
      if (!dominated) mins.push_back(u);
    }
    std::sort(mins.begin(), mins.end());
    return mins;
  };

  std::vector<LatticePoint> first = scan(L);
  std::vector<LatticePoint> second = scan(L + L / 2 + 2);
  if (first != second)
    fail(ErrorKind::Budget, "oracle box scan did not stabilize");
  return first;
}

} // namespace

MonomialModule pluricanonicalModule(const Cone& sigma,
                                    const std::vector<LatticePoint>& resolutionRays,
                                    const Int& i) {
  if (sigma.rank != 2)
    fail(ErrorKind::Precondition, "pluricanonicalModule oracle: rank 2 only");
  for (size_t k = 0; k + 1 < resolutionRays.size(); ++k) {
    Int d = det2(resolutionRays[k], resolutionRays[k + 1]);
    if (d != 1 && d != -1)
      fail(ErrorKind::Precondition, "pluricanonicalModule: resolution not smooth");
  }
  MonoidPtr base = hilbertBasisPtr(dualCone(sigma));
  if (i == 0) return unitModule(base);
  return makeModule(base, boxScanMinimal(sigma, resolutionRays, i));
}

MonomialModule grInterior(const Cone& sigma) {
  if (sigma.rank != 2)
    fail(ErrorKind::Precondition, "grInterior oracle: rank 2 only");
  MonoidPtr base = hilbertBasisPtr(dualCone(sigma));
  return makeModule(base, boxScanMinimal(sigma, sigma.rays, Int(1)));
}

} // namespace nashlab
