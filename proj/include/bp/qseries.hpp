#pragma once

// Truncated Laurent series in q with exact rational coefficients, the
// classical constructors (Eisenstein series, Delta, j), numeric evaluation
// and ingestion of McKay-Thompson tables.

#include <complex>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bp/arith.hpp"

namespace bp {

/// sum_{n0 <= n <= T} c_n q^n + O(q^{T+1}). Coefficients above the
/// precision T are unknown, not zero.
class QSeries {
public:
  QSeries() = default;
  /// coeffs[i] is the coefficient of q^{n0+i}; the precision is the last exponent.
  QSeries(long n0, std::vector<Rat> coeffs);
  /// Exact-zero coefficients from n0 through precision.
  static QSeries zeros(long n0, long precision);
  static QSeries monomial(long n, const Rat& c, long precision);

  long n0() const { return n0_; }
  long precision() const { return n0_ + static_cast<long>(c_.size()) - 1; }
  /// Coefficient of q^n; zero below n0. Throws beyond the precision.
  Rat coeff(long n) const;
  void set_coeff(long n, const Rat& value);
  /// Lowest exponent with a nonzero coefficient, or precision()+1 if none.
  long valuation() const;
  bool is_integral() const;
  /// n0 = -1, coefficient 1 at q^-1 and 0 at q^0.
  bool is_normalized_principal() const;

  QSeries truncate(long precision) const;
  /// Same series with its lowest stored exponent moved down to n0.
  QSeries extend_down(long n0) const;
  /// Coefficients agree for every exponent <= upto.
  bool agrees_with(const QSeries& other, long upto) const;

  QSeries operator-() const;
  friend QSeries operator+(const QSeries& f, const QSeries& g);
  friend QSeries operator-(const QSeries& f, const QSeries& g);
  friend QSeries operator*(const QSeries& f, const QSeries& g);
  friend QSeries operator*(const Rat& s, const QSeries& f);
  /// Adds a constant; requires the precision to reach q^0.
  friend QSeries operator+(const QSeries& f, const Rat& c);
  friend QSeries operator-(const QSeries& f, const Rat& c) { return f + Rat(-c); }
  friend bool operator==(const QSeries& f, const QSeries& g) {
    return f.n0_ == g.n0_ && f.c_ == g.c_;
  }

  /// Exact power-series inverse; the leading coefficient must be nonzero.
  QSeries inverse() const;
  friend QSeries operator/(const QSeries& f, const QSeries& g) { return f * g.inverse(); }
  QSeries pow(long k) const;
  /// c[0] + c[1] f + ... + c[k] f^k.
  QSeries compose_polynomial(const std::vector<Rat>& c) const;

private:
  long n0_ = 0;
  std::vector<Rat> c_;
};

Integer divisor_power_sum(long n, int power);

/// Constructors, each exact through q^T.
QSeries eisenstein_e4(long t);
QSeries eisenstein_e6(long t);
QSeries delta_series(long t);
QSeries j_series(long t);
/// j - 744, in normalized-principal form.
QSeries big_j_series(long t);

struct Evaluation {
  std::complex<double> value;
  double tail_bound;
};

/// Partial sum over n <= terms at q = e^{2 pi i z} with the crude tail
/// bound |a_T| |q|^T / (1 - |q|). Throws unless Im z > 0.
Evaluation evaluate(const QSeries& f, std::complex<double> z, long terms);

/// Rows "class,n,value" under that header; every class must be in
/// normalized-principal form with no gaps in n. Errors name the row.
std::map<std::string, QSeries> parse_mckay_thompson(std::istream& in);
std::map<std::string, QSeries> load_mckay_thompson(const std::string& path);

/// {"schema","n0","precision","coeffs":{"n":"value"}} with zero coefficients omitted.
nlohmann::ordered_json series_json(const QSeries& f, long upto);

std::string rat_string(const Rat& r);

}  // namespace bp
