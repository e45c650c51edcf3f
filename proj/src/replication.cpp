#include "bp/replication.hpp"

#include <algorithm>
#include <cmath>

namespace bp {

namespace {

void require_principal(const QSeries& f) {
  if (!f.is_normalized_principal())
    throw DomainError("series must be normalized principal: q^-1 + 0 + a_1 q + ...");
}

std::vector<long> proper_divisors(long k) {
  auto ds = divisors(k);
  ds.pop_back();
  return ds;
}

}  // namespace

FaberPolynomial faber(const QSeries& f, long k) {
  if (k < 1) throw DomainError("Faber degree must be >= 1");
  require_principal(f);
  if (f.precision() < k)
    throw DomainError("insufficient truncation: Q_" + std::to_string(k) + " needs f through q^" +
                      std::to_string(k));
  std::vector<QSeries> powers{QSeries::monomial(0, 1, f.precision()), f};
  for (long i = 2; i <= k; ++i) powers.push_back(powers.back() * f);
  FaberPolynomial q{k, std::vector<Rat>(static_cast<std::size_t>(k + 1), Rat(0))};
  q.coeffs[static_cast<std::size_t>(k)] = 1;
  QSeries acc = powers[static_cast<std::size_t>(k)];
  for (long m = k - 1; m >= 0; --m) {
    Rat c = -acc.coeff(-m);
    q.coeffs[static_cast<std::size_t>(m)] = c;
    if (sgn(c) != 0) acc = m == 0 ? acc + c : acc + c * powers[static_cast<std::size_t>(m)];
  }
  return q;
}

QSeries faber_apply(const FaberPolynomial& q, const QSeries& f) { return f.compose_polynomial(q.coeffs); }

ReplicateFamily::ReplicateFamily(QSeries b) : base(std::move(b)) {
  require_principal(base);
  members.emplace(1, base);
}

bool ReplicateFamily::has(long a, long precision) const {
  auto it = members.find(a);
  return it != members.end() && it->second.precision() >= precision;
}

const QSeries& ReplicateFamily::member(long a) const {
  auto it = members.find(a);
  if (it == members.end()) throw DomainError("incomplete family: replicate " + std::to_string(a) + " missing");
  return it->second;
}

long replicate_base_precision(long k, long t) { return k * k * t; }

QSeries replicate(ReplicateFamily& family, long k, long t) {
  if (k < 1) throw DomainError("replicate index must be >= 1");
  if (t < 1) throw DomainError("replicate precision must be >= 1");
  if (family.has(k, t)) return family.member(k).truncate(t);
  long need = replicate_base_precision(k, t);
  if (family.base.precision() < need)
    throw DomainError("insufficient truncation: replicate " + std::to_string(k) + " through q^" +
                      std::to_string(t) + " needs the base through q^" + std::to_string(need));
  for (long a : proper_divisors(k)) {
    long d = k / a;
    if (!family.has(a, d * d * t)) replicate(family, a, d * d * t);
  }
  QSeries qf = faber_apply(faber(family.base, k), family.base);
  auto lower_terms = [&](long m) {
    // sum over ad = k, a < k, a | m of d * a^(a)_{dm/a}
    Rat s = 0;
    for (long a : proper_divisors(k)) {
      if (m % a != 0) continue;
      long d = k / a;
      s += d * family.member(a).coeff(d * m / a);
    }
    return s;
  };
  for (long m = 1; m <= k * t; ++m) {
    if (m % k == 0) continue;
    if (qf.coeff(m) != lower_terms(m))
      throw ReplicationError("not replicable at k=" + std::to_string(k) +
                             ": fractional-exponent obstruction at q^" + std::to_string(m));
  }
  std::vector<Rat> c{Rat(1), Rat(0)};
  for (long j = 1; j <= t; ++j) c.push_back(qf.coeff(k * j) - lower_terms(k * j));
  QSeries result(-1, std::move(c));
  family.members.insert_or_assign(k, result);
  return result;
}

QSeries generalized_hecke(const ReplicateFamily& family, long k, long t) {
  if (k < 1) throw DomainError("Hecke index must be >= 1");
  if (t < -k) throw DomainError("truncation underflow");
  std::vector<Rat> c;
  for (long m = -k; m <= t; ++m) {
    Rat s = 0;
    for (long a : divisors(k)) {
      if (m % a != 0) continue;
      long d = k / a;
      long idx = d * m / a;
      if (idx < -1) continue;
      if (!family.has(a, idx))
        throw DomainError("incomplete family: replicate " + std::to_string(a) + " through q^" +
                          std::to_string(idx) + " missing");
      s += d * family.member(a).coeff(idx);
    }
    c.push_back(s);
  }
  return QSeries(-k, std::move(c));
}

FunctionalEquationCheck functional_equation(const ReplicateFamily& family, long k,
                                            std::complex<double> z, long terms) {
  if (k < 1) throw DomainError("replicate index must be >= 1");
  std::complex<double> lhs = evaluate(family.member(k), double(k) * z, terms).value;
  for (long a : proper_divisors(k)) {
    long d = k / a;
    for (long b = 0; b < d; ++b)
      lhs += evaluate(family.member(a), (double(a) * z + double(b)) / double(d), terms).value;
  }
  FaberPolynomial q = faber(family.base, k);
  std::complex<double> x = evaluate(family.base, z, terms).value;
  std::complex<double> rhs = 0.0;
  for (auto it = q.coeffs.rbegin(); it != q.coeffs.rend(); ++it) rhs = rhs * x + it->get_d();
  double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
  return {lhs, rhs, err};
}

bool ReplicationReport::replicable() const {
  return std::all_of(entries.begin(), entries.end(), [](const ReplicationEntry& e) {
    return e.replicable && (!e.numeric_checked || e.numeric_ok);
  });
}

ReplicationReport is_replicable(const QSeries& f, long k_max, long terms, long numeric_terms) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  if (terms < 1) throw DomainError("terms must be >= 1");
  ReplicateFamily family(f);
  ReplicationReport report{k_max, terms, {}};
  const std::complex<double> samples[] = {{0.1, 1.0}, {-0.3, 1.1}, {0.45, 0.95}, {0.2, 1.25},
                                          {-0.15, 1.05}};
  long t = std::max(terms, numeric_terms);
  for (long k = 1; k <= k_max; ++k) {
    ReplicationEntry entry;
    entry.k = k;
    try {
      QSeries r = replicate(family, k, t);
      entry.replicable = true;
      entry.series = r.truncate(terms);
      entry.integral = entry.series.is_integral();
    } catch (const DomainError& e) {
      entry.failure = e.what();
    }
    if (entry.replicable && numeric_terms > 0 && k > 1) {
      entry.numeric_checked = true;
      for (auto z : samples)
        entry.numeric_error = std::max(entry.numeric_error,
                                       functional_equation(family, k, z, numeric_terms).relative_error);
      entry.numeric_ok = entry.numeric_error < 1e-8;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

nlohmann::ordered_json faber_json(const FaberPolynomial& q) {
  nlohmann::ordered_json doc;
  doc["schema"] = "bp/1";
  doc["degree"] = q.degree;
  auto& coeffs = doc["coeffs"] = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < q.coeffs.size(); ++i)
    if (sgn(q.coeffs[i]) != 0) coeffs[std::to_string(i)] = rat_string(q.coeffs[i]);
  return doc;
}

nlohmann::ordered_json report_json(const ReplicationReport& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = "bp/1";
  doc["k_max"] = report.k_max;
  doc["terms"] = report.terms;
  doc["replicable"] = report.replicable();
  auto& es = doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json je;
    je["k"] = e.k;
    je["replicable"] = e.replicable;
    if (!e.replicable) {
      je["failure"] = e.failure;
    } else {
      je["integral"] = e.integral;
      if (e.numeric_checked) je["numeric"] = {{"ok", e.numeric_ok}, {"max_relative_error", e.numeric_error}};
      je["coeffs"] = series_json(e.series, report.terms)["coeffs"];
    }
    es.push_back(std::move(je));
  }
  return doc;
}

}  // namespace bp
