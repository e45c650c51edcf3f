#include "bp/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bp {

QSeries::QSeries(long n0, std::vector<Rat> coeffs) : n0_(n0), c_(std::move(coeffs)) {
  if (c_.empty()) throw DomainError("truncation underflow");
  for (auto& x : c_) x.canonicalize();
}

QSeries QSeries::zeros(long n0, long precision) {
  if (precision < n0) throw DomainError("truncation underflow");
  return QSeries(n0, std::vector<Rat>(static_cast<std::size_t>(precision - n0 + 1), Rat(0)));
}

QSeries QSeries::monomial(long n, const Rat& c, long precision) {
  QSeries f = zeros(std::min(n, precision), precision);
  if (n <= precision) f.set_coeff(n, c);
  return f;
}

Rat QSeries::coeff(long n) const {
  if (n > precision())
    throw DomainError("insufficient truncation: coefficient of q^" + std::to_string(n) +
                      " unknown beyond q^" + std::to_string(precision()));
  if (n < n0_) return 0;
  return c_[static_cast<std::size_t>(n - n0_)];
}

void QSeries::set_coeff(long n, const Rat& value) {
  if (n > precision() || n < n0_) throw DomainError("coefficient outside stored range");
  c_[static_cast<std::size_t>(n - n0_)] = value;
}

long QSeries::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return n0_ + static_cast<long>(i);
  return precision() + 1;
}

bool QSeries::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x.get_den() == 1; });
}

bool QSeries::is_normalized_principal() const {
  return n0_ == -1 && precision() >= 0 && coeff(-1) == 1 && sgn(coeff(0)) == 0;
}

QSeries QSeries::truncate(long t) const {
  if (t > precision()) throw DomainError("insufficient truncation: cannot extend precision");
  if (t < n0_) throw DomainError("truncation underflow");
  return QSeries(n0_, std::vector<Rat>(c_.begin(), c_.begin() + (t - n0_ + 1)));
}

QSeries QSeries::extend_down(long n0) const {
  if (n0 >= n0_) return *this;
  std::vector<Rat> c(static_cast<std::size_t>(n0_ - n0), Rat(0));
  c.insert(c.end(), c_.begin(), c_.end());
  return QSeries(n0, std::move(c));
}

bool QSeries::agrees_with(const QSeries& other, long upto) const {
  long lo = std::min(n0_, other.n0_);
  for (long n = lo; n <= upto; ++n)
    if (coeff(n) != other.coeff(n)) return false;
  return true;
}

QSeries QSeries::operator-() const {
  QSeries out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

namespace {

QSeries combine(const QSeries& f, const QSeries& g, int sign) {
  long t = std::min(f.precision(), g.precision());
  long lo = std::min(f.n0(), g.n0());
  QSeries out = QSeries::zeros(std::min(lo, t), t);
  for (long n = out.n0(); n <= t; ++n) out.set_coeff(n, f.coeff(n) + sign * g.coeff(n));
  return out;
}

// Integer numerators over a common denominator, for exponents lo..hi.
std::pair<std::vector<Integer>, Integer> common_denominator(const QSeries& f, long lo, long hi) {
  Integer den = 1;
  for (long n = lo; n <= hi; ++n) den = lcm(den, f.coeff(n).get_den());
  std::vector<Integer> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) {
    Rat c = f.coeff(n);
    out.push_back(c.get_num() * (den / c.get_den()));
  }
  return {std::move(out), den};
}

}  // namespace

QSeries operator+(const QSeries& f, const QSeries& g) { return combine(f, g, 1); }
QSeries operator-(const QSeries& f, const QSeries& g) { return combine(f, g, -1); }

QSeries operator*(const QSeries& f, const QSeries& g) {
  long vf = f.valuation(), vg = g.valuation();
  long tf = f.precision(), tg = g.precision();
  long t = std::min(tf + vg, tg + vf);
  if (vf > tf || vg > tg) return QSeries::zeros(std::min(vf + vg, t), t);
  auto [a, da] = common_denominator(f, vf, tf);
  auto [b, db] = common_denominator(g, vg, tg);
  long lo = vf + vg;
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(t - lo + 1));
  Integer den = da * db;
  Integer acc;
  for (long n = lo; n <= t; ++n) {
    acc = 0;
    long i_lo = std::max(vf, n - tg), i_hi = std::min(tf, n - vg);
    for (long i = i_lo; i <= i_hi; ++i)
      mpz_addmul(acc.get_mpz_t(), a[static_cast<std::size_t>(i - vf)].get_mpz_t(),
                 b[static_cast<std::size_t>(n - i - vg)].get_mpz_t());
    out.emplace_back(acc, den);
  }
  return QSeries(lo, std::move(out));
}

QSeries operator*(const Rat& s, const QSeries& f) {
  QSeries out = f;
  for (long n = f.n0(); n <= f.precision(); ++n) out.set_coeff(n, s * f.coeff(n));
  return out;
}

QSeries operator+(const QSeries& f, const Rat& c) {
  if (f.precision() < 0) throw DomainError("truncation underflow: constant term unknown");
  QSeries out = f.extend_down(0);
  out.set_coeff(0, out.coeff(0) + c);
  return out;
}

QSeries QSeries::inverse() const {
  long v = valuation();
  long t = precision();
  if (v > t) throw DomainError("cannot invert a series with no known nonzero coefficient");
  long len = t - v + 1;
  auto [u, den] = common_denominator(*this, v, t);
  // 1/f = den * q^{-v} / U with U = sum u_i q^i integral.
  std::vector<Rat> b(static_cast<std::size_t>(len));
  Rat lead_inv(1, u[0]);
  lead_inv.canonicalize();
  b[0] = lead_inv;
  bool unit = abs(u[0]) == 1;
  if (unit) {
    std::vector<Integer> bi(static_cast<std::size_t>(len));
    bi[0] = u[0];  // 1/(+-1) = +-1
    Integer acc;
    for (long n = 1; n < len; ++n) {
      acc = 0;
      for (long i = 1; i <= n; ++i)
        mpz_addmul(acc.get_mpz_t(), u[static_cast<std::size_t>(i)].get_mpz_t(),
                   bi[static_cast<std::size_t>(n - i)].get_mpz_t());
      bi[static_cast<std::size_t>(n)] = -acc * u[0];
    }
    for (long n = 0; n < len; ++n) b[static_cast<std::size_t>(n)] = Rat(bi[static_cast<std::size_t>(n)]);
  } else {
    for (long n = 1; n < len; ++n) {
      Rat acc = 0;
      for (long i = 1; i <= n; ++i) acc += Rat(u[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(n - i)];
      b[static_cast<std::size_t>(n)] = -acc * lead_inv;
    }
  }
  for (auto& x : b) x *= den;
  // Known through q^{-v + len - 1} = q^{t - 2v}.
  return QSeries(-v, std::move(b));
}

QSeries QSeries::pow(long k) const {
  if (k < 1) throw DomainError("series power must be >= 1");
  QSeries result = *this;
  QSeries base = *this;
  bool first = true;
  for (long e = k; e > 0; e >>= 1) {
    if (e & 1) {
      result = first ? base : result * base;
      first = false;
    }
    if (e > 1) base = base * base;
  }
  return result;
}

QSeries QSeries::compose_polynomial(const std::vector<Rat>& c) const {
  if (c.empty()) throw DomainError("empty polynomial");
  QSeries sum;
  bool have = false;
  QSeries power = *this;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (i > 1) power = power * *this;
    if (sgn(c[i]) == 0) continue;
    QSeries term = c[i] * power;
    sum = have ? sum + term : term;
    have = true;
  }
  if (!have) return QSeries::monomial(0, c[0], precision());
  return sum + c[0];
}

Integer divisor_power_sum(long n, int power) {
  Integer s = 0;
  for (long d : divisors(n)) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(power));
    s += p;
  }
  return s;
}

namespace {

QSeries eisenstein(long t, int power, long scale) {
  if (t < 1) throw DomainError("precision must be >= 1");
  std::vector<Rat> c(static_cast<std::size_t>(t + 1));
  c[0] = 1;
  for (long n = 1; n <= t; ++n) c[static_cast<std::size_t>(n)] = Rat(scale * divisor_power_sum(n, power));
  return QSeries(0, std::move(c));
}

}  // namespace

QSeries eisenstein_e4(long t) { return eisenstein(t, 3, 240); }
QSeries eisenstein_e6(long t) { return eisenstein(t, 5, -504); }

QSeries delta_series(long t) {
  if (t < 1) throw DomainError("precision must be >= 1");
  // prod_{n>=1} (1 - q^n) through q^{t-1}, expanded factor by factor.
  std::vector<Integer> p(static_cast<std::size_t>(t), 0);
  p[0] = 1;
  for (long n = 1; n < t; ++n)
    for (long e = t - 1; e >= n; --e) p[static_cast<std::size_t>(e)] -= p[static_cast<std::size_t>(e - n)];
  std::vector<Rat> c(p.begin(), p.end());
  QSeries eta = QSeries(0, std::move(c));
  QSeries d = eta.pow(24);
  std::vector<Rat> shifted;
  for (long n = 0; n <= d.precision(); ++n) shifted.push_back(d.coeff(n));
  return QSeries(1, std::move(shifted));
}

QSeries j_series(long t) {
  if (t < 1) throw DomainError("precision must be >= 1");
  QSeries e4 = eisenstein_e4(t + 1);
  return (e4.pow(3) / delta_series(t + 2)).truncate(t);
}

QSeries big_j_series(long t) { return j_series(t) - Rat(744); }

Evaluation evaluate(const QSeries& f, std::complex<double> z, long terms) {
  if (!(z.imag() > 0.0)) throw DomainError("evaluation requires Im(z) > 0");
  if (terms > f.precision()) throw DomainError("insufficient truncation for requested terms");
  if (terms < f.n0()) throw DomainError("truncation underflow");
  const double two_pi = 2.0 * std::acos(-1.0);
  std::complex<double> q = std::exp(std::complex<double>(0.0, two_pi) * z);
  std::complex<double> qn = std::pow(q, static_cast<int>(f.n0()));
  std::complex<double> sum = 0.0;
  for (long n = f.n0(); n <= terms; ++n) {
    sum += f.coeff(n).get_d() * qn;
    qn *= q;
  }
  double aq = std::abs(q);
  double tail = std::abs(f.coeff(terms).get_d()) * std::pow(aq, static_cast<double>(terms)) / (1.0 - aq);
  return {sum, tail};
}

namespace {

std::string trim(std::string s) {
  auto blank = [](unsigned char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; };
  while (!s.empty() && blank(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && blank(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

}  // namespace

std::map<std::string, QSeries> parse_mckay_thompson(std::istream& in) {
  std::map<std::string, std::map<long, Rat>> rows;
  std::map<std::string, long> first_row;
  std::string line;
  long row = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "class,n,value")
        throw DomainError("row " + std::to_string(row) + ": expected header \"class,n,value\"");
      header = true;
      continue;
    }
    auto fail = [&](const std::string& why) {
      throw DomainError("row " + std::to_string(row) + ": " + why);
    };
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (fields.size() != 3 || fields[0].empty()) fail("expected class,n,value");
    long n = 0;
    try {
      std::size_t used = 0;
      n = std::stol(fields[1], &used);
      if (used != fields[1].size()) fail("malformed exponent '" + fields[1] + "'");
    } catch (const std::logic_error&) {
      fail("malformed exponent '" + fields[1] + "'");
    }
    if (n < -1) fail("exponent below -1");
    Rat value;
    try {
      value = parse_rational(fields[2]);
    } catch (const DomainError& e) {
      fail(e.what());
    }
    if (n == -1 && value != 1) fail("coefficient of q^-1 must be 1");
    if (n == 0 && sgn(value) != 0) fail("nonzero constant term");
    auto& coeffs = rows[fields[0]];
    first_row.try_emplace(fields[0], row);
    if (!coeffs.emplace(n, value).second) fail("duplicate exponent " + std::to_string(n));
  }
  std::map<std::string, QSeries> out;
  for (auto& [label, coeffs] : rows) {
    auto where = "class " + label + " (row " + std::to_string(first_row[label]) + ")";
    if (!coeffs.count(-1)) throw DomainError(where + ": missing q^-1 coefficient");
    coeffs.try_emplace(0, Rat(0));
    long top = coeffs.rbegin()->first;
    if (top < 1) throw DomainError(where + ": no positive coefficients");
    std::vector<Rat> c;
    for (long n = -1; n <= top; ++n) {
      auto it = coeffs.find(n);
      if (it == coeffs.end())
        throw DomainError(where + ": missing coefficient of q^" + std::to_string(n));
      c.push_back(it->second);
    }
    out.emplace(label, QSeries(-1, std::move(c)));
  }
  return out;
}

std::map<std::string, QSeries> load_mckay_thompson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return parse_mckay_thompson(in);
}

std::string rat_string(const Rat& r) { return r.get_str(); }

nlohmann::ordered_json series_json(const QSeries& f, long upto) {
  if (upto > f.precision()) throw DomainError("insufficient truncation for requested terms");
  nlohmann::ordered_json doc;
  doc["schema"] = "bp/1";
  doc["n0"] = f.n0();
  doc["precision"] = upto;
  auto& coeffs = doc["coeffs"] = nlohmann::ordered_json::object();
  for (long n = f.n0(); n <= upto; ++n) {
    Rat c = f.coeff(n);
    if (sgn(c) != 0) coeffs[std::to_string(n)] = rat_string(c);
  }
  return doc;
}

}  // namespace bp
