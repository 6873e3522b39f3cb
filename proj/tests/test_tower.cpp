#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nashlab/tower.hpp"

using namespace nashlab;

static LatticePoint pt(std::initializer_list<long> v) {
  std::vector<Int> c;
  for (long x : v) c.push_back(x);
  return LatticePoint{c};
}

static std::vector<LatticePoint> pts(std::initializer_list<std::initializer_list<long>> vs) {
  std::vector<LatticePoint> r;
  for (auto& v : vs) r.push_back(pt(v));
  return r;
}

static MonoidPtr quotientChart(long a, long b) {
  // chart of the cyclic quotient 1/a(1,b): cone (0,1),(a,-b)
  Cone sigma = makeCone(2, pts({{0, 1}, {a, -b}}));
  return hilbertBasisPtr(dualCone(sigma));
}

TEST_CASE("logJacobian") {
  AffineMonoid free2 = makeAffineMonoid(2, pts({{1, 0}, {0, 1}}));
  CHECK(logJacobian(free2).gens == pts({{1, 1}}));

  MonoidPtr a1 = quotientChart(2, 1);
  CHECK(a1->gens == pts({{1, 0}, {1, 1}, {1, 2}}));
  CHECK(logJacobian(*a1).gens == pts({{2, 1}, {2, 2}, {2, 3}}));

  MonoidPtr c3 = quotientChart(3, 1);
  CHECK(logJacobian(*c3).gens == pts({{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}}));
}

TEST_CASE("logJacobian principal iff smooth, small corpus") {
  for (long a = 2; a <= 7; ++a) {
    for (long b = 1; b < a; ++b) {
      if (boost::multiprecision::gcd(Int(a), Int(b)) != 1) continue;
      MonoidPtr s = quotientChart(a, b);
      CHECK(isSmooth(*s) == bool(isPrincipal(logJacobian(*s))));
    }
  }
  AffineMonoid unsat = makeAffineMonoid(2, pts({{2, 0}, {3, 0}, {0, 1}}));
  CHECK(!isSmooth(unsat));
  CHECK(!isPrincipal(logJacobian(unsat)));
}

TEST_CASE("blowupCharts normalized on A1") {
  MonoidPtr a1 = quotientChart(2, 1);
  TowerChart root{a1, a1->chartCone, logJacobian(*a1), 0, -1, std::nullopt};
  auto charts = blowupCharts(root, root.omegaTop, TowerMode::Normalized);
  REQUIRE(charts.size() == 2);
  CHECK(charts[0].cone->rays == pts({{0, 1}, {1, 0}}));
  CHECK(charts[1].cone->rays == pts({{1, 0}, {2, -1}}));
  CHECK(isSmooth(*charts[0].monoid));
  CHECK(isSmooth(*charts[1].monoid));
}

TEST_CASE("blowupCharts of a principal module is the chart itself") {
  MonoidPtr a1 = quotientChart(2, 1);
  TowerChart root{a1, a1->chartCone, logJacobian(*a1), 0, -1, std::nullopt};
  MonomialModule pr = makeModule(a1, pts({{3, 2}}));
  auto n = blowupCharts(root, pr, TowerMode::Normalized);
  REQUIRE(n.size() == 1);
  CHECK(monoidEqual(*n[0].monoid, *a1));
  auto nn = blowupCharts(root, pr, TowerMode::NonNormal);
  REQUIRE(nn.size() == 1);
  CHECK(monoidEqual(*nn[0].monoid, *a1));
}

TEST_CASE("blowupCharts non-normal on A1 prunes the middle chart") {
  MonoidPtr a1 = quotientChart(2, 1);
  TowerChart root{a1, std::nullopt, logJacobian(*a1), 0, -1, std::nullopt};
  auto charts = blowupCharts(root, root.omegaTop, TowerMode::NonNormal);
  REQUIRE(charts.size() == 2);
  for (const auto& c : charts) CHECK(isSmooth(*c.monoid));
}

TEST_CASE("nashTower: smooth input terminates at level 0") {
  MonoidPtr s = hilbertBasisPtr(dualCone(makeCone(2, pts({{0, 1}, {1, 0}}))));
  Tower t = nashTower(s, TowerMode::Normalized, 8);
  CHECK(t.terminated);
  CHECK(t.m == 0);
  CHECK(finalFan(t) == pts({{0, 1}, {1, 0}}));
}

TEST_CASE("nashTower on A1 and 1/3(1,1)") {
  Tower t2 = nashTower(quotientChart(2, 1), TowerMode::Normalized, 8);
  CHECK(t2.terminated);
  CHECK(t2.m == 1);
  CHECK(finalFan(t2) == pts({{0, 1}, {1, 0}, {2, -1}}));

  Tower t3 = nashTower(quotientChart(3, 1), TowerMode::Normalized, 8);
  CHECK(t3.terminated);
  CHECK(t3.m == 1);
  CHECK(finalFan(t3) == pts({{0, 1}, {1, 0}, {3, -1}}));
}

TEST_CASE("nashTower on 1/5(1,2): two levels, Nash fan refines the minimal one") {
  Tower t = nashTower(quotientChart(5, 2), TowerMode::Normalized, 8);
  CHECK(t.terminated);
  CHECK(t.m == 2);
  CHECK(finalFan(t) == pts({{0, 1}, {1, 0}, {4, -1}, {3, -1}, {5, -2}}));
}

TEST_CASE("final fans are smooth subdivisions of the input cone") {
  for (long a : {2L, 3L, 4L, 5L, 7L}) {
    for (long b = 1; b < a; ++b) {
      if (boost::multiprecision::gcd(Int(a), Int(b)) != 1) continue;
      Tower t = nashTower(quotientChart(a, b), TowerMode::Normalized, 16);
      REQUIRE(t.terminated);
      auto rays = finalFan(t);
      CHECK(rays.front() == pt({0, 1}));
      CHECK(rays.back() == pt({a, -b}));
      for (size_t i = 0; i + 1 < rays.size(); ++i) {
        Int d = det2(rays[i], rays[i + 1]);
        CHECK((d == 1 || d == -1));
      }
    }
  }
}

TEST_CASE("non-normal towers terminate; normalized valuations never exceed them") {
  // Omega of a non-normal chart is smaller than Omega of its normalization
  // (the saturation brings extra differentials), so along any common ray the
  // normalized omegaTop order is <= the non-normal one, with equality at
  // level 0 where the charts coincide.
  for (long a : {2L, 3L, 5L}) {
    for (long b = 1; b < a; ++b) {
      if (boost::multiprecision::gcd(Int(a), Int(b)) != 1) continue;
      MonoidPtr s = quotientChart(a, b);
      Tower tn = nashTower(s, TowerMode::Normalized, 16);
      Tower tu = nashTower(s, TowerMode::NonNormal, 16);
      REQUIRE(tn.terminated);
      REQUIRE(tu.terminated);
      for (const auto& leaf : tu.levels.back()) {
        CHECK(isSmooth(*leaf.monoid));
        CHECK(leaf.monoid->saturated);
      }
      auto rays = finalFan(tn);
      int maxLevel = std::min(tn.depth(), tu.depth());
      for (int lvl = 0; lvl <= maxLevel; ++lvl) {
        for (const auto& ray : rays) {
          std::optional<Int> normVal;
          for (const auto& c : tn.level(lvl))
            if (c.cone && coneContains(*c.cone, ray)) {
              Int v = ordAlong(c.omegaTop, ray);
              if (normVal) CHECK(*normVal == v); // walls agree across charts
              normVal = v;
            }
          REQUIRE(normVal.has_value());
          for (const auto& c : tu.level(lvl))
            if (coneContains(c.monoid->chartCone, ray)) {
              Int v = ordAlong(c.omegaTop, ray);
              if (lvl == 0) CHECK(v == *normVal);
              else CHECK(*normVal <= v);
            }
        }
      }
    }
  }
}

TEST_CASE("chartContaining clamps to the stabilized level") {
  Tower t = nashTower(quotientChart(2, 1), TowerMode::Normalized, 8);
  const TowerChart& c = chartContaining(t, 5, pt({1, 0}));
  CHECK(c.level == t.m);
  CHECK_THROWS_AS(chartContaining(t, 1, pt({-1, 0})), Error);
}

TEST_CASE("reflexiveTower") {
  // smooth chart: nothing to do
  ReflexiveTowerReport smooth = reflexiveTower(
      makeAffineMonoidPtr(2, pts({{1, 0}, {0, 1}})), 20);
  CHECK(smooth.terminated);
  CHECK(smooth.steps == 0);

  // A1 is Gorenstein: the hull of the log-Jacobian is already principal
  ReflexiveTowerReport a1 = reflexiveTower(quotientChart(2, 1), 20);
  CHECK(a1.terminated);
  CHECK(a1.steps == 0);

  // 1/3(1,1) needs one reflexive blowup
  ReflexiveTowerReport c3 = reflexiveTower(quotientChart(3, 1), 20);
  CHECK(c3.terminated);
  CHECK(c3.steps == 1);

  // corpus sweep up to 7 stays within a small budget
  for (long a = 2; a <= 7; ++a) {
    for (long b = 1; b < a; ++b) {
      if (boost::multiprecision::gcd(Int(a), Int(b)) != 1) continue;
      ReflexiveTowerReport r = reflexiveTower(quotientChart(a, b), 20);
      CHECK(r.terminated);
      CHECK(r.steps <= 20);
    }
  }
}

TEST_CASE("reflexiveTower rejects unsaturated charts") {
  MonoidPtr unsat = makeAffineMonoidPtr(2, pts({{1, 0}, {1, 2}}));
  CHECK_THROWS_AS(reflexiveTower(unsat, 20), Error);
}
