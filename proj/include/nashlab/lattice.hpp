#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "nashlab/errors.hpp"

namespace nashlab {

// All arithmetic in the library is exact. Int/Rat are arbitrary precision;
// there is deliberately no fixed-width fallback anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ratNum(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int ratDen(const Rat& q) { return boost::multiprecision::denominator(q); }

/// A point of the character or cocharacter lattice Z^n.
struct LatticePoint {
  std::vector<Int> x;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<Int> coords) : x(std::move(coords)) {}
  LatticePoint(std::initializer_list<Int> coords) : x(coords) {}

  int rank() const { return static_cast<int>(x.size()); }
  bool isZero() const;

  const Int& operator[](int i) const { return x[static_cast<size_t>(i)]; }
  Int& operator[](int i) { return x[static_cast<size_t>(i)]; }

  friend LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
  friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
  friend LatticePoint operator*(const Int& c, const LatticePoint& a);
  LatticePoint operator-() const;

  bool operator==(const LatticePoint& o) const { return x == o.x; }
  // lexicographic; used only to canonicalize generator lists and as map key
  std::strong_ordering operator<=>(const LatticePoint& o) const;

  std::string str() const;
};

/// Exact pairing <u, v> between character and cocharacter vectors.
Int dot(const LatticePoint& a, const LatticePoint& b);

/// gcd of all coordinates (nonnegative); 0 for the zero vector.
Int contentGcd(const LatticePoint& a);

/// a / gcd(a). The zero vector is rejected.
LatticePoint primitive(const LatticePoint& a);

/// Exact determinant of a square integer matrix given as rows.
/// Fraction-free Gaussian elimination (Bareiss).
Int det(const std::vector<LatticePoint>& rows);

/// det of two rank-2 points without building a matrix.
Int det2(const LatticePoint& a, const LatticePoint& b);

using IntMat = std::vector<std::vector<Int>>;

struct HermiteResult {
  IntMat form;      // row-style Hermite normal form of the input
  IntMat transform; // unimodular; transform * input == form
};

/// Row-style Hermite normal form: pivots positive, entries above a pivot
/// reduced into [0, pivot), zero rows at the bottom.
HermiteResult hermiteForm(const IntMat& rows);

/// Rank of the integer matrix (via the Hermite form).
int latticeRank(const IntMat& rows);

/// Truncated p-adic expansion of a rational with denominator prime to p.
struct PadicApprox {
  Int p;
  unsigned k = 0;
  Int residue; // in [0, p^k), congruent to the reduced value mod p^k

  bool operator==(const PadicApprox& o) const = default;
  std::string str() const;
};

/// The p-adic limit  first + first*ratio + first*ratio^2 + ...  as an exact
/// rational, i.e. first/(1-ratio). Convergence requires p | ratio.
Rat padicGeometricSum(const Rat& first, const Int& ratio, const Int& p);

/// Residue of q modulo p^k; requires p coprime to the denominator of q.
PadicApprox padicReduce(const Rat& q, const Int& p, unsigned k);

bool isPrime(const Int& p);

/// Smallest prime divisor of n (n >= 2); used to default the series prime
/// to the smallest prime dividing n+2.
Int smallestPrimeDivisor(const Int& n);

std::string toString(const Int& v);
std::string toString(const Rat& v);

} // namespace nashlab
