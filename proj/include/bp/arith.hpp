#pragma once

// Exact arithmetic backbone: big integers and rationals (GMP), 2x2 integer
// and rational matrices, scalar normalization and Hermite reduction.

#include <gmpxx.h>

#include <compare>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bp {

using Integer = mpz_class;
using Rat = mpq_class;

/// Raised for every violated precondition of a library operation. The
/// message is a single line suitable for CLI diagnostics.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// Floor modulus: result in [0, |m|).
Integer mod(const Integer& a, const Integer& m);

/// Solves g = x*a + y*b with g = gcd(a, b) >= 0.
struct ExtGcd {
  Integer g, x, y;
};
ExtGcd ext_gcd(const Integer& a, const Integer& b);

struct IntMat2 {
  Integer a{0}, b{0}, c{0}, d{0};

  IntMat2() = default;
  IntMat2(Integer a_, Integer b_, Integer c_, Integer d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static IntMat2 identity() { return {1, 0, 0, 1}; }
  static IntMat2 diag(const Integer& x, const Integer& y) { return {x, 0, 0, y}; }

  Integer det() const { return a * d - b * c; }
  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0 && sgn(d) == 0; }
  /// Classical adjugate: m * adj(m) = det(m) * I.
  IntMat2 adjugate() const { return {d, -b, -c, a}; }
  IntMat2 transpose() const { return {a, c, b, d}; }
  IntMat2 operator-() const { return {-a, -b, -c, -d}; }

  friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend IntMat2 operator*(const Integer& s, const IntMat2& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend bool operator==(const IntMat2& x, const IntMat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  /// Lexicographic on (a, b, c, d); used for deterministic ordering.
  friend bool operator<(const IntMat2& x, const IntMat2& y);
};

struct RatMat2 {
  Rat a{0}, b{0}, c{0}, d{0};

  RatMat2() = default;
  RatMat2(Rat a_, Rat b_, Rat c_, Rat d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  RatMat2(const IntMat2& m) : a(m.a), b(m.b), c(m.c), d(m.d) {}  // NOLINT

  Rat det() const { return a * d - b * c; }
  bool is_integral() const;
  /// Throws DomainError on a singular matrix.
  RatMat2 inverse() const;

  friend RatMat2 operator*(const RatMat2& x, const RatMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend RatMat2 operator*(const Rat& s, const RatMat2& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend bool operator==(const RatMat2& x, const RatMat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

/// A class in PGL2+(Q), stored as its designated integral representative:
/// primitive (content 1), positive determinant, and sign fixed so that the
/// lower-left entry is positive, or it is zero and the lower-right entry is.
class PglClass {
public:
  explicit PglClass(const RatMat2& g);
  const IntMat2& rep() const { return rep_; }
  Integer det() const { return rep_.det(); }

  friend bool operator==(const PglClass& x, const PglClass& y) { return x.rep_ == y.rep_; }
  friend bool operator<(const PglClass& x, const PglClass& y) { return x.rep_ < y.rep_; }

  PglClass inverse() const;
  friend PglClass operator*(const PglClass& x, const PglClass& y);

private:
  IntMat2 rep_;
};

/// gcd of the four entries. Throws on the zero matrix.
Integer content(const IntMat2& m);

/// The smallest positive rational alpha with alpha*g integral.
Rat alpha_of(const RatMat2& g);

/// Designated primitive integral representative of the scalar class of g.
/// Throws DomainError("not in GL2+(Q)") unless det(g) > 0.
PglClass primitive_rep(const RatMat2& g);

/// det(alpha_g * g); invariant under Q* scaling and SL2(Z) on either side.
Integer delta1(const RatMat2& g);

/// Row-style Hermite normal form: the unique [[a,b],[0,d]] with a,d >= 1 and
/// 0 <= b < d in the coset SL2(Z)*m. Throws unless det(m) > 0.
IntMat2 hnf_reduce(const IntMat2& m);

/// Row-style Hermite normal form of the Z-span of arbitrarily many integer
/// row vectors (given as the rows of each matrix). The span must have rank 2.
IntMat2 hnf_of_span(std::initializer_list<IntMat2> generators);

/// An integer or "p/q" with q != 0, surrounding blanks ignored.
Rat parse_rational(std::string_view text);

// Text format "a,b;c,d"; entries are integers or "p/q".
RatMat2 parse_matrix(std::string_view text);
IntMat2 parse_int_matrix(std::string_view text);
std::string format_matrix(const IntMat2& m);
std::string format_matrix(const RatMat2& m);

std::ostream& operator<<(std::ostream& os, const IntMat2& m);
std::ostream& operator<<(std::ostream& os, const RatMat2& m);

// Small number-theoretic helpers shared by the enumeration code.
bool is_prime(long n);
/// Prime factorization as (prime, exponent) pairs in ascending order.
std::vector<std::pair<long, int>> factorize(long n);
std::vector<long> divisors(long n);
/// Exponent of p in n (n != 0).
int valuation(const Integer& n, long p);

}  // namespace bp
