#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "bp/qseries.hpp"
#include "bp/replication.hpp"
#include "oracles.hpp"

using namespace bp;

namespace {

// q^{-1} + sum c_n q^n with the given coefficients from n = 1.
QSeries principal(std::vector<long> tail, long precision) {
  QSeries f = QSeries::zeros(-1, precision);
  f.set_coeff(-1, 1);
  for (std::size_t i = 0; i < tail.size() && static_cast<long>(i) + 1 <= precision; ++i)
    f.set_coeff(static_cast<long>(i) + 1, tail[i]);
  return f;
}

std::string error_of(const std::string& csv) {
  std::istringstream in(csv);
  try {
    parse_mckay_thompson(in);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

const std::map<std::string, QSeries>& table() {
  static const auto t = load_mckay_thompson(BP_DATA_DIR "/mckay_thompson.csv");
  return t;
}

}  // namespace

TEST_CASE("series arithmetic") {
  QSeries f = principal({3, -2, 7}, 6);
  CHECK(f + QSeries::zeros(-1, 6) == f);
  QSeries qinv = QSeries::monomial(-1, 1, 8), q = QSeries::monomial(1, 1, 8);
  QSeries one = qinv * q;
  CHECK(one.coeff(0) == 1);
  for (long n = 1; n <= one.precision(); ++n) CHECK(one.coeff(n) == 0);
  QSeries s = (qinv + q).pow(2);
  CHECK(s.n0() == -2);
  CHECK(s.coeff(-2) == 1);
  CHECK(s.coeff(-1) == 0);
  CHECK(s.coeff(0) == 2);
  CHECK(s.coeff(1) == 0);
  CHECK(s.coeff(2) == 1);
  CHECK(s.coeff(3) == 0);
  QSeries g = QSeries(0, {Rat(2), Rat(1, 3), Rat(-5), Rat(4)});
  QSeries gi = g.inverse();
  QSeries prod = g * gi;
  CHECK(prod.coeff(0) == 1);
  for (long n = 1; n <= prod.precision(); ++n) CHECK(prod.coeff(n) == 0);
  CHECK_THROWS_AS(QSeries::zeros(0, 4).inverse(), DomainError);
  CHECK_THROWS_AS(f.coeff(7), DomainError);
}

TEST_CASE("classical constructors") {
  QSeries J = big_j_series(30);
  CHECK(J.coeff(0) == 0);
  CHECK(J.coeff(1) == 196884);
  CHECK(J.coeff(2) == 21493760);
  CHECK(J.coeff(3) == 864299970);
  QSeries delta = delta_series(10);
  CHECK(delta.coeff(1) == 1);
  CHECK(delta.coeff(2) == -24);
  CHECK(delta.coeff(3) == 252);
  CHECK(eisenstein_e4(5).coeff(1) == 240);
  CHECK(eisenstein_e6(5).coeff(1) == -504);
  CHECK(divisor_power_sum(6, 3) == 1 + 8 + 27 + 216);
}

TEST_CASE("delta and j through a second expansion path") {
  const long t = 40;
  QSeries eta24 = oracle::pentagonal_eta(t).pow(24);
  QSeries delta = delta_series(t);
  for (long n = 1; n <= t; ++n) CHECK(delta.coeff(n) == eta24.coeff(n - 1));
  QSeries via_e6 = Rat(1, 1728) * (eisenstein_e4(t).pow(3) - eisenstein_e6(t).pow(2));
  for (long n = 1; n <= t; ++n) CHECK(via_e6.coeff(n) == delta.coeff(n));
  QSeries j = j_series(30);
  // j * Delta = E4^3 exactly.
  QSeries check = j * delta_series(32);
  QSeries e4c = eisenstein_e4(32).pow(3);
  for (long n = 0; n <= 30; ++n) CHECK(check.coeff(n) == e4c.coeff(n));
}

TEST_CASE("Faber polynomials") {
  QSeries f = principal({5, -3, 2, 1}, 10);
  auto q1 = faber(f, 1);
  CHECK(q1.coeffs == std::vector<Rat>{0, 1});
  auto q2 = faber(f, 2);
  CHECK(q2.coeffs == std::vector<Rat>{-10, 0, 1});
  QSeries J = big_j_series(20);
  QSeries q2j = faber_apply(faber(J, 2), J);
  CHECK(q2j.n0() == -2);
  CHECK(q2j.coeff(-2) == 1);
  CHECK(q2j.coeff(-1) == 0);
  CHECK(q2j.coeff(0) == 0);
  CHECK_THROWS_AS(faber(principal({1}, 2), 4), DomainError);
}

TEST_CASE("Faber uniqueness on random series") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> coeff(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> tail;
    for (int i = 0; i < 12; ++i) tail.push_back(coeff(rng));
    QSeries f = principal(tail, 12);
    for (long k = 1; k <= 8; ++k) {
      auto qk = faber(f, k);
      CHECK(qk.degree == k);
      CHECK(qk.coeffs.back() == 1);
      QSeries g = faber_apply(qk, f);
      CHECK(g.coeff(-k) == 1);
      for (long n = -k + 1; n <= 0; ++n) CHECK(g.coeff(n) == 0);
    }
  }
}

TEST_CASE("J is self-replicating") {
  ReplicateFamily family(big_j_series(replicate_base_precision(6, 20)));
  CHECK(replicate(family, 1, 20).agrees_with(family.base, 20));
  for (long k = 2; k <= 6; ++k) {
    QSeries r = replicate(family, k, 20);
    CHECK(r.agrees_with(family.base, 20));
    CHECK(r.is_normalized_principal());
  }
}

TEST_CASE("replicate round trip") {
  ReplicateFamily family(big_j_series(replicate_base_precision(6, 12)));
  for (long k = 2; k <= 6; ++k) {
    replicate(family, k, 12);
    QSeries hecke = generalized_hecke(family, k, 12);
    QSeries faber_k = faber_apply(faber(family.base, k), family.base);
    CHECK(hecke.coeff(-k) == 1);
    for (long n = -k; n <= 12; ++n) CHECK(hecke.coeff(n) == faber_k.coeff(n));
  }
  QSeries h1 = generalized_hecke(family, 1, 12);
  CHECK(h1.agrees_with(family.base, 12));
  QSeries J = family.base;
  QSeries q2 = generalized_hecke(family, 2, 10);
  QSeries expected = J * J - Rat(2 * 196884);
  for (long n = -2; n <= 10; ++n) CHECK(q2.coeff(n) == expected.coeff(n));
  ReplicateFamily fresh(big_j_series(40));
  CHECK_THROWS_AS(generalized_hecke(fresh, 6, 5), DomainError);
}

TEST_CASE("replicability reports") {
  auto report = is_replicable(big_j_series(replicate_base_precision(6, 10)), 6, 10, 0);
  CHECK(report.replicable());
  CHECK(report.entries.size() == 6);
  for (const auto& e : report.entries) {
    CHECK(e.replicable);
    CHECK(e.integral);
  }
  auto numeric = is_replicable(big_j_series(replicate_base_precision(3, 40)), 3, 10, 40);
  CHECK(numeric.replicable());
  for (const auto& e : numeric.entries) CHECK((e.k == 1 || (e.numeric_checked && e.numeric_ok)));
  auto short_base = is_replicable(big_j_series(20), 6, 10, 0);
  CHECK_FALSE(short_base.replicable());
  auto bad = is_replicable(principal({1, 1}, 200), 4, 10, 0);
  bool flagged = !bad.replicable();
  for (const auto& e : bad.entries) flagged = flagged || !e.integral;
  CHECK(flagged);
}

TEST_CASE("ingested McKay-Thompson series") {
  const auto& t = table();
  REQUIRE(t.count("1A") == 1);
  REQUIRE(t.count("2A") == 1);
  QSeries J = big_j_series(t.at("1A").precision());
  CHECK(t.at("1A").agrees_with(J, t.at("1A").precision()));
  CHECK(t.at("2A").coeff(1) == 4372);
  ReplicateFamily family(t.at("2A"));
  CHECK(replicate(family, 2, 10).agrees_with(J, 10));
  for (const auto& [label, f] : t) {
    auto report = is_replicable(f, 4, 10, 0);
    CHECK_MESSAGE(report.replicable(), label);
  }
}

TEST_CASE("McKay-Thompson CSV validation") {
  std::istringstream prefix("class,n,value\n1A,-1,1\n1A,0,0\n1A,1,196884\n");
  auto m = parse_mckay_thompson(prefix);
  CHECK(m.at("1A").coeff(1) == 196884);
  std::istringstream empty("");
  CHECK(parse_mckay_thompson(empty).empty());
  std::string err = error_of("class,n,value\n2A,-1,1\n2A,0,5\n");
  CHECK(err.find("nonzero constant term") != std::string::npos);
  CHECK(err.find("row 3") != std::string::npos);
  CHECK(error_of("class,n,value\n3A,-1,2\n").find("must be 1") != std::string::npos);
  CHECK(!error_of("n,class,value\n").empty());
  CHECK(!error_of("class,n,value\n1A,-1,1\n1A,x,2\n").empty());
  CHECK(!error_of("class,n,value\n1A,-1,1\n1A,-1,1\n").empty());
}

TEST_CASE("functional equation of the replication identity") {
  ReplicateFamily family(big_j_series(replicate_base_precision(3, 80)));
  for (long k : {2, 3}) replicate(family, k, 80);
  const std::complex<double> samples[] = {{0.1, 1.0}, {-0.3, 1.1}, {0.45, 0.95}, {0.2, 1.25}, {-0.15, 1.05}};
  for (long k : {2, 3})
    for (auto z : samples) CHECK(functional_equation(family, k, z, 80).relative_error < 1e-8);
}

TEST_CASE("evaluation") {
  QSeries J = big_j_series(60);
  auto at_i = evaluate(J, {0.0, 1.0}, 50);
  CHECK(std::abs(at_i.value - std::complex<double>(984.0)) < 1e-6);
  std::complex<double> rho = std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi / 3.0));
  auto at_rho = evaluate(J, rho, 50);
  CHECK(std::abs(at_rho.value - std::complex<double>(-744.0)) < 1e-6);
  std::complex<double> z(0.17, 0.8);
  CHECK(std::abs(evaluate(J, z, 50).value - evaluate(J, z + 1.0, 50).value) < 1e-9);
  QSeries f = principal({2, -1, 3, 5, -2, 1, 4, 0, -3, 2}, 10);
  QSeries g = QSeries(0, {1, 3, -2, 1, 1, 0, 2, -1, 1, 3, 2});
  auto fg = evaluate(f * g, z, 9);
  auto ef = evaluate(f, z, 10), eg = evaluate(g, z, 10);
  double tolerance = 10 * (fg.tail_bound + std::abs(ef.value) * eg.tail_bound +
                           std::abs(eg.value) * ef.tail_bound) + 1e-9;
  CHECK(std::abs(fg.value - ef.value * eg.value) < tolerance);
  CHECK_THROWS_AS(evaluate(J, {0.0, 0.0}, 10), DomainError);
}

TEST_CASE("series JSON") {
  auto j = series_json(big_j_series(5), 2);
  CHECK(j["schema"] == "bp/1");
  CHECK(j["n0"] == -1);
  CHECK(j["coeffs"]["-1"] == "1");
  CHECK(j["coeffs"]["1"] == "196884");
  CHECK(j["coeffs"].size() == 3);
  CHECK(rat_string(Rat(-3, 4)) == "-3/4");
}
