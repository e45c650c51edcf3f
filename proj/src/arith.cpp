#include "bp/arith.hpp"

#include <algorithm>
#include <sstream>

namespace bp {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool operator<(const IntMat2& x, const IntMat2& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  if (x.c != y.c) return x.c < y.c;
  return x.d < y.d;
}

bool RatMat2::is_integral() const {
  return a.get_den() == 1 && b.get_den() == 1 && c.get_den() == 1 && d.get_den() == 1;
}

RatMat2 RatMat2::inverse() const {
  Rat dt = det();
  if (sgn(dt) == 0) throw DomainError("singular matrix has no inverse");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

Integer content(const IntMat2& m) {
  if (m.is_zero()) throw DomainError("zero matrix has no content");
  return gcd(gcd(m.a, m.b), gcd(m.c, m.d));
}

Rat alpha_of(const RatMat2& g) {
  Integer den = lcm(lcm(g.a.get_den(), g.b.get_den()), lcm(g.c.get_den(), g.d.get_den()));
  auto scale = [&](const Rat& x) { return Integer(x.get_num() * (den / x.get_den())); };
  IntMat2 scaled{scale(g.a), scale(g.b), scale(g.c), scale(g.d)};
  Rat alpha(den, content(scaled));
  alpha.canonicalize();
  return alpha;
}

namespace {

IntMat2 scale_to_primitive(const RatMat2& g) {
  Rat alpha = alpha_of(g);
  RatMat2 s = alpha * g;
  return {s.a.get_num(), s.b.get_num(), s.c.get_num(), s.d.get_num()};
}

}  // namespace

PglClass::PglClass(const RatMat2& g) {
  if (sgn(g.det()) <= 0) throw DomainError("not in GL2+(Q)");
  rep_ = scale_to_primitive(g);
  if (sgn(rep_.c) < 0 || (sgn(rep_.c) == 0 && sgn(rep_.d) < 0)) rep_ = -rep_;
}

PglClass PglClass::inverse() const { return PglClass(RatMat2(rep_.adjugate())); }

PglClass operator*(const PglClass& x, const PglClass& y) {
  return PglClass(RatMat2(x.rep_ * y.rep_));
}

PglClass primitive_rep(const RatMat2& g) { return PglClass(g); }

Integer delta1(const RatMat2& g) { return primitive_rep(g).det(); }

IntMat2 hnf_reduce(const IntMat2& m) {
  Integer det = m.det();
  if (sgn(det) <= 0) throw DomainError("hnf_reduce requires positive determinant");
  // Unimodular row combination clearing the lower-left entry.
  ExtGcd e = ext_gcd(m.a, m.c);
  Integer top_right = e.x * m.b + e.y * m.d;
  Integer lower = det / e.g;
  return {e.g, mod(top_right, lower), 0, lower};
}

IntMat2 hnf_of_span(std::initializer_list<IntMat2> generators) {
  std::vector<std::pair<Integer, Integer>> rows;
  for (const auto& m : generators) {
    rows.emplace_back(m.a, m.b);
    rows.emplace_back(m.c, m.d);
  }
  Integer pa = 0, pb = 0, lower = 0;
  for (const auto& [ra, rb] : rows) {
    if (sgn(ra) == 0) {
      lower = gcd(lower, rb);
      continue;
    }
    ExtGcd e = ext_gcd(pa, ra);
    // [[x, y], [-ra/g, pa/g]] is unimodular and clears the first column.
    Integer new_b = e.x * pb + e.y * rb;
    Integer residual = (-ra / e.g) * pb + (pa / e.g) * rb;
    pa = e.g;
    pb = new_b;
    lower = gcd(lower, residual);
  }
  if (sgn(pa) == 0 || sgn(lower) == 0) throw DomainError("generators do not span a lattice");
  return {pa, mod(pb, lower), 0, lower};
}

Rat parse_rational(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  auto valid_int = [](std::string_view v) {
    if (!v.empty() && (v.front() == '-' || v.front() == '+')) v.remove_prefix(1);
    if (v.empty()) return false;
    for (char ch : v)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view v) {
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    return Integer(std::string(v));
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_int(s)) throw DomainError("malformed number '" + std::string(s) + "'");
    return Rat(to_int(s));
  }
  auto num = trim(s.substr(0, slash)), den = trim(s.substr(slash + 1));
  if (!valid_int(num) || !valid_int(den))
    throw DomainError("malformed number '" + std::string(s) + "'");
  Integer d = to_int(den);
  if (sgn(d) == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
  Rat r(to_int(num), d);
  r.canonicalize();
  return r;
}

RatMat2 parse_matrix(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos)
    throw DomainError("malformed matrix '" + std::string(text) + "', expected \"a,b;c,d\"");
  auto split_row = [&](std::string_view row) {
    auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw DomainError("malformed matrix '" + std::string(text) + "', expected \"a,b;c,d\"");
    return std::pair{parse_rational(row.substr(0, comma)), parse_rational(row.substr(comma + 1))};
  };
  auto [a, b] = split_row(text.substr(0, semi));
  auto [c, d] = split_row(text.substr(semi + 1));
  return {a, b, c, d};
}

IntMat2 parse_int_matrix(std::string_view text) {
  RatMat2 m = parse_matrix(text);
  if (!m.is_integral())
    throw DomainError("matrix '" + std::string(text) + "' must have integer entries");
  return {m.a.get_num(), m.b.get_num(), m.c.get_num(), m.d.get_num()};
}

std::string format_matrix(const IntMat2& m) {
  std::ostringstream os;
  os << m.a << ',' << m.b << ';' << m.c << ',' << m.d;
  return os.str();
}

std::string format_matrix(const RatMat2& m) {
  std::ostringstream os;
  os << m.a << ',' << m.b << ';' << m.c << ',' << m.d;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMat2& m) { return os << format_matrix(m); }
std::ostream& operator<<(std::ostream& os, const RatMat2& m) { return os << format_matrix(m); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw DomainError("factorize requires a positive integer");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t size = out.size();
    long pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < size; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int valuation(const Integer& n, long p) {
  if (sgn(n) == 0) throw DomainError("valuation of zero");
  Integer m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    m /= p;
    ++v;
  }
  return v;
}

}  // namespace bp
