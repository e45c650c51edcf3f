#pragma once

// Faber polynomials, replicate powers and generalized Hecke operators for
// normalized principal series f = q^-1 + a_1 q + a_2 q^2 + ...

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bp/qseries.hpp"

namespace bp {

/// Monic polynomial sum coeffs[i] x^i of degree k.
struct FaberPolynomial {
  long degree = 0;
  std::vector<Rat> coeffs;
};

/// The unique monic Q_k with Q_k(f) = q^-k + O(q). Needs precision >= k.
FaberPolynomial faber(const QSeries& f, long k);
/// Q(f) as a series.
QSeries faber_apply(const FaberPolynomial& q, const QSeries& f);

/// A base series with its replicates f^(a), member 1 being the base.
struct ReplicateFamily {
  explicit ReplicateFamily(QSeries base);
  QSeries base;
  std::map<long, QSeries> members;
  bool has(long a, long precision) const;
  const QSeries& member(long a) const;
};

/// Raised when the replication recursion meets an inconsistency.
class ReplicationError : public DomainError {
public:
  using DomainError::DomainError;
};

/// The k-th replicate through q^T, computed from
///   a^(k)_j = [q^{kj}] Q_k(f) - sum_{ad=k, d>1} d a^(a)_{d^2 j}
/// after computing every f^(a), a a proper divisor of k, to the precision the
/// recursion needs. The base must be known through roughly q^{k^2 T}. Every
/// coefficient [q^m] Q_k(f) with k not dividing m is checked against
///   sum_{ad=k, a|m} d a^(a)_{dm/a};
/// a mismatch is a fractional-exponent obstruction and throws
/// ReplicationError("not replicable at k=...").
QSeries replicate(ReplicateFamily& family, long k, long t);

/// Base precision that replicate(family, k, t) consumes.
long replicate_base_precision(long k, long t);

/// sum_{ad=k, 0<=b<d} f^(a)((az+b)/d) as a q-series through q^T, by
/// [q^m] = sum_{ad=k, a|m} d a^(a)_{dm/a}. Throws DomainError("incomplete
/// family") when a member is missing or too short.
QSeries generalized_hecke(const ReplicateFamily& family, long k, long t);

/// Both sides of the defining equation
///   f^(k)(kz) + sum_{ad=k, a!=k, 0<=b<d} f^(a)((az+b)/d)   and   Q_k(f(z)),
/// evaluated numerically from the family's members with `terms` terms each.
struct FunctionalEquationCheck {
  std::complex<double> lhs, rhs;
  double relative_error;
};
FunctionalEquationCheck functional_equation(const ReplicateFamily& family, long k,
                                            std::complex<double> z, long terms);

struct ReplicationEntry {
  long k = 1;
  bool replicable = false;
  std::string failure;        // empty, or "fractional-exponent obstruction ..."
  bool integral = false;      // every computed coefficient is an integer
  bool numeric_checked = false;
  bool numeric_ok = false;    // functional equation to 1e-8 at the sample points
  double numeric_error = 0.0;
  QSeries series;             // the replicate when computed
};

struct ReplicationReport {
  long k_max = 1;
  long terms = 1;
  std::vector<ReplicationEntry> entries;
  bool replicable() const;
};

/// Runs replicate for k = 1..k_max with `terms` coefficients each. When
/// `numeric_terms` > 0 the functional equation is also checked numerically at
/// fixed sample points using that many terms of every member.
ReplicationReport is_replicable(const QSeries& f, long k_max, long terms, long numeric_terms = 0);

nlohmann::ordered_json faber_json(const FaberPolynomial& q);
nlohmann::ordered_json report_json(const ReplicationReport& report);

}  // namespace bp
