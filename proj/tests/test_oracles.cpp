#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nashlab/oracles.hpp"
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

TEST_CASE("hjResolve: smooth, A1, 1/3(1,1), 1/5(1,2)") {
  CHECK(hjResolve(makeCone(2, pts({{0, 1}, {1, 0}}))).rays == pts({{0, 1}, {1, 0}}));
  CHECK(hjResolve(makeCone(2, pts({{0, 1}, {2, -1}}))).rays == pts({{0, 1}, {1, 0}, {2, -1}}));
  CHECK(hjResolve(makeCone(2, pts({{0, 1}, {3, -1}}))).rays == pts({{0, 1}, {1, 0}, {3, -1}}));
  CHECK(hjResolve(makeCone(2, pts({{0, 1}, {5, -2}}))).rays ==
        pts({{0, 1}, {1, 0}, {3, -1}, {5, -2}}));
}

TEST_CASE("hjResolve output is smooth and minimal over a corpus") {
  for (long a = 2; a <= 12; ++a) {
    for (long b = 1; b < a; ++b) {
      if (boost::multiprecision::gcd(Int(a), Int(b)) != 1) continue;
      Cone c = makeCone(2, pts({{0, 1}, {a, -b}}));
      auto res = hjResolve(c).rays;
      for (size_t i = 0; i + 1 < res.size(); ++i) {
        Int d = det2(res[i], res[i + 1]);
        CHECK((d == 1 || d == -1));
      }
      // minimality: dropping any interior ray breaks smoothness
      for (size_t i = 1; i + 1 < res.size(); ++i) {
        Int d = det2(res[i - 1], res[i + 1]);
        CHECK(d != 1);
        CHECK(d != -1);
      }
    }
  }
}

TEST_CASE("pluricanonicalModule") {
  Cone a1 = makeCone(2, pts({{0, 1}, {2, -1}}));
  auto res = hjResolve(a1).rays;
  MonomialModule p0 = pluricanonicalModule(a1, res, Int(0));
  CHECK(p0.gens == pts({{0, 0}}));
  MonomialModule p1 = pluricanonicalModule(a1, res, Int(1));
  CHECK(p1.gens == pts({{1, 1}}));

  // degree-i times degree-k sits inside degree-(i+k)
  for (long i = 1; i <= 3; ++i) {
    for (long k = 1; k + i <= 4; ++k) {
      MonomialModule a = pluricanonicalModule(a1, res, Int(i));
      MonomialModule b = pluricanonicalModule(a1, res, Int(k));
      MonomialModule c = pluricanonicalModule(a1, res, Int(i + k));
      CHECK(moduleSubset(product(a, b), c));
    }
  }
}

TEST_CASE("pluricanonicalModule is resolution-independent") {
  for (long a : {2L, 3L, 5L, 7L}) {
    for (long b = 1; b < a; ++b) {
      if (boost::multiprecision::gcd(Int(a), Int(b)) != 1) continue;
      Cone sigma = makeCone(2, pts({{0, 1}, {a, -b}}));
      auto hj = hjResolve(sigma).rays;
      Tower t = nashTower(hilbertBasisPtr(dualCone(sigma)), TowerMode::Normalized, 16);
      REQUIRE(t.terminated);
      auto nash = finalFan(t);
      for (long i = 1; i <= 4; ++i) {
        MonomialModule viaHj = pluricanonicalModule(sigma, hj, Int(i));
        MonomialModule viaNash = pluricanonicalModule(sigma, nash, Int(i));
        CHECK(moduleEqual(viaHj, viaNash));
      }
    }
  }
}

TEST_CASE("grInterior") {
  CHECK(grInterior(makeCone(2, pts({{0, 1}, {1, 0}}))).gens == pts({{1, 1}}));
  CHECK(grInterior(makeCone(2, pts({{0, 1}, {2, -1}}))).gens == pts({{1, 1}}));
  CHECK(grInterior(makeCone(2, pts({{0, 1}, {3, -1}}))).gens == pts({{1, 1}, {1, 2}}));
}

TEST_CASE("grInterior equals degree-1 pluricanonical on the corpus") {
  for (long a = 2; a <= 9; ++a) {
    for (long b = 1; b < a; ++b) {
      if (boost::multiprecision::gcd(Int(a), Int(b)) != 1) continue;
      Cone sigma = makeCone(2, pts({{0, 1}, {a, -b}}));
      auto res = hjResolve(sigma).rays;
      CHECK(moduleEqual(grInterior(sigma), pluricanonicalModule(sigma, res, Int(1))));
    }
  }
}
