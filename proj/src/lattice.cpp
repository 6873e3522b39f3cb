#include "nashlab/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace nashlab {

bool LatticePoint::isZero() const {
  return std::all_of(x.begin(), x.end(), [](const Int& c) { return c == 0; });
}

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
  if (a.x.size() != b.x.size())
    fail(ErrorKind::Structural, "lattice point rank mismatch in +");
  LatticePoint r;
  r.x.reserve(a.x.size());
  for (size_t i = 0; i < a.x.size(); ++i) r.x.push_back(a.x[i] + b.x[i]);
  return r;
}

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  if (a.x.size() != b.x.size())
    fail(ErrorKind::Structural, "lattice point rank mismatch in -");
  LatticePoint r;
  r.x.reserve(a.x.size());
  for (size_t i = 0; i < a.x.size(); ++i) r.x.push_back(a.x[i] - b.x[i]);
  return r;
}

LatticePoint operator*(const Int& c, const LatticePoint& a) {
  LatticePoint r;
  r.x.reserve(a.x.size());
  for (const Int& v : a.x) r.x.push_back(c * v);
  return r;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint r;
  r.x.reserve(x.size());
  for (const Int& v : x) r.x.push_back(-v);
  return r;
}

std::strong_ordering LatticePoint::operator<=>(const LatticePoint& o) const {
  if (x.size() != o.x.size())
    return x.size() <=> o.x.size();
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < o.x[i]) return std::strong_ordering::less;
    if (x[i] > o.x[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string LatticePoint::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) os << ",";
    os << x[i];
  }
  os << ")";
  return os.str();
}

Int dot(const LatticePoint& a, const LatticePoint& b) {
  if (a.x.size() != b.x.size())
    fail(ErrorKind::Structural, "lattice point rank mismatch in pairing");
  Int s = 0;
  for (size_t i = 0; i < a.x.size(); ++i) s += a.x[i] * b.x[i];
  return s;
}

Int contentGcd(const LatticePoint& a) {
  Int g = 0;
  for (const Int& v : a.x) g = boost::multiprecision::gcd(g, v);
  return g;
}

LatticePoint primitive(const LatticePoint& a) {
  Int g = contentGcd(a);
  if (g == 0) fail(ErrorKind::Degenerate, "primitive() of the zero vector");
  LatticePoint r = a;
  for (Int& v : r.x) v /= g;
  return r;
}

Int det2(const LatticePoint& a, const LatticePoint& b) {
  if (a.rank() != 2 || b.rank() != 2)
    fail(ErrorKind::Structural, "det2 needs rank-2 points");
  return a.x[0] * b.x[1] - a.x[1] * b.x[0];
}

Int det(const std::vector<LatticePoint>& rows) {
  size_t n = rows.size();
  for (const auto& r : rows)
    if (r.x.size() != n)
      fail(ErrorKind::Structural, "det needs a square matrix");
  if (n == 0) return 1;
  if (n == 1) return rows[0].x[0];
  if (n == 2) return det2(rows[0], rows[1]);

  // Bareiss fraction-free elimination
  IntMat a(n, std::vector<Int>(n));
  for (size_t i = 0; i < n; ++i) a[i] = rows[i].x;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

// one extended-gcd row step: rows r1 <- p*r1 + q*r2, r2 <- u*r1 + v*r2
// with p*a + q*b = g, det of the 2x2 step = +-1
void gcdRowStep(IntMat& m, IntMat& t, size_t r1, size_t r2, size_t col) {
  using boost::multiprecision::gcd;
  Int a = m[r1][col], b = m[r2][col];
  if (b == 0) return;
  if (a == 0) {
    std::swap(m[r1], m[r2]);
    std::swap(t[r1], t[r2]);
    return;
  }
  // extended gcd
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, tt = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * tt; old_t = tt; tt = tmp;
  }
  Int g = old_r, p = old_s, q = old_t; // p*a + q*b = g
  Int u = -b / g, v = a / g;           // u*a + v*b = 0, p*v - q*u = 1
  size_t ncols = m[r1].size();
  for (size_t j = 0; j < ncols; ++j) {
    Int m1 = p * m[r1][j] + q * m[r2][j];
    Int m2 = u * m[r1][j] + v * m[r2][j];
    m[r1][j] = m1;
    m[r2][j] = m2;
  }
  size_t tcols = t[r1].size();
  for (size_t j = 0; j < tcols; ++j) {
    Int t1 = p * t[r1][j] + q * t[r2][j];
    Int t2 = u * t[r1][j] + v * t[r2][j];
    t[r1][j] = t1;
    t[r2][j] = t2;
  }
}

} // namespace

HermiteResult hermiteForm(const IntMat& rows) {
  size_t nr = rows.size();
  if (nr == 0) fail(ErrorKind::Structural, "hermiteForm of an empty matrix");
  size_t nc = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != nc)
      fail(ErrorKind::Structural, "hermiteForm needs rectangular input");

  IntMat m = rows;
  IntMat t(nr, std::vector<Int>(nr, 0));
  for (size_t i = 0; i < nr; ++i) t[i][i] = 1;

  size_t row = 0;
  for (size_t col = 0; col < nc && row < nr; ++col) {
    for (size_t i = row + 1; i < nr; ++i) gcdRowStep(m, t, row, i, col);
    if (m[row][col] == 0) continue;
    if (m[row][col] < 0) {
      for (auto& v : m[row]) v = -v;
      for (auto& v : t[row]) v = -v;
    }
    // reduce the entries above the pivot into [0, pivot)
    for (size_t i = 0; i < row; ++i) {
      Int q;
      // floor division
      Int a = m[i][col], b = m[row][col];
      q = a / b;
      if (a % b < 0) q -= 1;
      if (q != 0) {
        for (size_t j = 0; j < nc; ++j) m[i][j] -= q * m[row][j];
        for (size_t j = 0; j < nr; ++j) t[i][j] -= q * t[row][j];
      }
    }
    ++row;
  }
  return {std::move(m), std::move(t)};
}

int latticeRank(const IntMat& rows) {
  if (rows.empty()) return 0;
  HermiteResult h = hermiteForm(rows);
  int r = 0;
  for (const auto& row : h.form) {
    bool nz = std::any_of(row.begin(), row.end(),
                          [](const Int& v) { return v != 0; });
    if (nz) ++r;
  }
  return r;
}

Rat padicGeometricSum(const Rat& first, const Int& ratio, const Int& p) {
  if (!isPrime(p)) fail(ErrorKind::Structural, "padicGeometricSum: p must be prime");
  if (first == 0) return Rat(0);
  if (ratio % p != 0)
    fail(ErrorKind::Convergence,
         "padicGeometricSum: |ratio|_p >= 1, series does not converge (p="
         + toString(p) + ", ratio=" + toString(ratio) + ")");
  return first / Rat(Int(1) - ratio);
}

PadicApprox padicReduce(const Rat& q, const Int& p, unsigned k) {
  if (!isPrime(p)) fail(ErrorKind::Structural, "padicReduce: p must be prime");
  Int pk = boost::multiprecision::pow(p, k);
  Int num = ratNum(q), den = ratDen(q);
  if (den % p == 0)
    fail(ErrorKind::Valuation,
         "padicReduce: denominator " + toString(den) + " divisible by p=" + toString(p));
  if (num == 0) return {p, k, Int(0)};
  // den^{-1} mod p^k by extended gcd
  Int a = den % pk, b = pk;
  Int x0 = 1, x1 = 0;
  while (b != 0) {
    Int qq = a / b;
    Int tmp = a - qq * b; a = b; b = tmp;
    tmp = x0 - qq * x1; x0 = x1; x1 = tmp;
  }
  // now a == gcd == 1, x0 = den^{-1} mod pk (possibly negative)
  Int inv = x0 % pk;
  if (inv < 0) inv += pk;
  Int r = (num % pk) * inv % pk;
  if (r < 0) r += pk;
  return {p, k, r};
}

std::string PadicApprox::str() const {
  return toString(residue) + " mod " + toString(p) + "^" + std::to_string(k);
}

bool isPrime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int smallestPrimeDivisor(const Int& n) {
  if (n < 2) fail(ErrorKind::Structural, "smallestPrimeDivisor needs n >= 2");
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

std::string toString(const Int& v) { return v.str(); }

std::string toString(const Rat& v) {
  if (ratDen(v) == 1) return ratNum(v).str();
  return ratNum(v).str() + "/" + ratDen(v).str();
}

} // namespace nashlab
