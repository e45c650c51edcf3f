// Acceptance suite: one line per criterion, "criterion N (...): PASS|FAIL".
// Exit status is nonzero when any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <deque>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bp/congruence.hpp"
#include "bp/picture.hpp"
#include "bp/qseries.hpp"
#include "bp/replication.hpp"
#include "bp/spectral.hpp"
#include "oracles.hpp"

using namespace bp;

namespace {

struct Outcome {
  long checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 1000) failures.push_back(what);
  }
};

std::string str(const Integer& x) { return x.get_str(); }

// Riemann zeta for real s > 1 by Euler-Maclaurin with a few correction terms.
double zeta(double s) {
  const long n = 1000;
  double sum = 0.0;
  for (long k = n - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  double N = n;
  sum += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1.0) / 12.0 -
         s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
  return sum;
}

std::vector<Vertex> image(const GroupElement& g, const std::vector<Vertex>& vs) {
  std::vector<Vertex> out;
  for (const auto& v : vs) out.push_back(act(g, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Outcome criterion1() {
  Outcome o;
  std::mt19937_64 rng(101);
  auto pool = ball(Vertex::base(), 30);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < 100; ++i) {
    const Vertex& v = pool[pick(rng)];
    for (long p : {2, 3, 5, 7, 11}) {
      auto nb = neighbors(v, p);
      o.expect(static_cast<long>(nb.size()) == p + 1,
               v.id() + " has " + std::to_string(nb.size()) + " " + std::to_string(p) + "-neighbours");
      for (const auto& w : nb)
        o.expect(oracle::hyperdistance(v.rep(), w.rep()) == p, v.id() + " -> " + w.id());
    }
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (long n = 1; n <= 200; ++n) {
    long expected = oracle::hnf_count(n, true);
    long got = static_cast<long>(sphere(Vertex::base(), n).size());
    o.expect(got == expected, "N=" + std::to_string(n) + " sphere " + std::to_string(got) +
                                  " vs " + std::to_string(expected));
    long total = oracle::hnf_count(n, false);
    o.expect(total == oracle::sigma1(n), "N=" + std::to_string(n) + " HNF total");
    o.expect(static_cast<long>(hnf_matrices(n).size()) == total, "N=" + std::to_string(n) + " hnf_matrices");
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(103);
  const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (int i = 0; i < 1000; ++i) {
    Vertex u = oracle::random_vertex(rng, 100), v = oracle::random_vertex(rng, 100),
           w = oracle::random_vertex(rng, 100);
    Integer uv = hyperdistance(u, v), vw = hyperdistance(v, w), uw = hyperdistance(u, w);
    std::string tag = u.id() + " | " + v.id() + " | " + w.id();
    o.expect(uw <= uv * vw, "triangle " + tag);
    o.expect(uv == hyperdistance(v, u), "symmetry " + tag);
    Integer product = 1;
    for (long p : primes) {
      int d = oracle::tree_distance(u.rep(), v.rep(), p);
      o.expect(p_adic_distance(u, v, p) == d, "p-adic " + tag);
      for (int k = 0; k < d; ++k) product *= p;
    }
    o.expect(product == uv, "factorization " + tag + " " + str(product) + " vs " + str(uv));
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (long n : {2L, 3L, 4L, 6L, 12L}) {
    auto t = thread(n).vertices;
    auto s = snake(n).vertices;
    std::string N = "N=" + std::to_string(n);
    long snake_moved = 0, snake_checked = 0;
    for (int k = 0; k < 200; ++k) {
      GroupElement g = random_gamma0_element(n, 4000 * n + k, 3);
      o.expect(in_gamma0(g, n), N + " sampler");
      o.expect(act(g, Vertex::base()) == Vertex::base(), N + " fixes nu_1");
      o.expect(act(g, Vertex::nu(n)) == Vertex::nu(n), N + " fixes nu_N");
      for (const auto& v : t) o.expect(act(g, v) == v, N + " thread vertex " + v.id());
      for (const auto& v : s) {
        ++snake_checked;
        snake_moved += act(g, v) != v;
      }
    }
    o.expect(snake_moved == 0, N + " snake pointwise: " + std::to_string(snake_moved) + " of " +
                                   std::to_string(snake_checked) + " (element, vertex) pairs moved");
    for (long e : exact_divisors(n)) {
      GroupElement w = atkin_lehner(n, e);
      o.expect(image(w, t) == t, N + " W_" + std::to_string(e) + " preserves thread");
      o.expect(in_gamma0(w * w, n), N + " W_" + std::to_string(e) + " squared");
    }
  }
  // Normalizer membership against direct conjugation on 100 random pairs.
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<int> kind(0, 3), small(-6, 6);
  const long levels[] = {2, 3, 4, 6, 12, 36};
  std::uniform_int_distribution<std::size_t> level(0, std::size(levels) - 1);
  int inside = 0;
  for (int pair = 0; pair < 100; ++pair) {
    long n = levels[level(rng)];
    long h = normalizer_h(n);
    GroupElement g(RatMat2(1, 0, 0, 1));
    switch (kind(rng)) {
      case 0: {  // g_h x g_h^{-1} with x in Gamma0(N/h^2)+
        long m = n / (h * h);
        auto eds = exact_divisors(m);
        GroupElement x = random_gamma0_element(m, 7000 + pair, 2) *
                         atkin_lehner(m, eds[static_cast<std::size_t>(pair) % eds.size()]);
        RatMat2 gh(h, 0, 0, 1), gh_inv(Rat(1, h), 0, 0, 1);
        g = GroupElement(gh_inv * RatMat2(x.rep()) * gh);
        break;
      }
      case 1:  // translation by a rational
        g = GroupElement(RatMat2(1, Rat(small(rng), 1 + std::abs(small(rng))), 0, 1));
        break;
      case 2:  // an SL2(Z) element
        g = GroupElement(RatMat2(oracle::random_sl2(rng, 6)));
        break;
      default: {  // a small integral matrix
        for (;;) {
          RatMat2 m(small(rng), small(rng), small(rng), small(rng));
          if (sgn(m.det()) > 0) {
            g = GroupElement(m);
            break;
          }
        }
      }
    }
    bool direct = true;
    GroupElement gi = g.inverse();
    for (int k = 0; k < 40 && direct; ++k) {
      GroupElement gamma = random_gamma0_element(n, 9000 + 100 * pair + k, 2);
      direct = in_gamma0(g * gamma * gi, n) && in_gamma0(gi * gamma * g, n);
    }
    bool claimed = in_normalizer(g, n);
    inside += claimed;
    o.expect(claimed == direct, "normalizer N=" + std::to_string(n) + " g=" + format_matrix(g.rep()) +
                                    " claimed " + std::to_string(claimed));
  }
  o.expect(inside >= 20, "normalizer sample has too few members: " + std::to_string(inside));
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto s = snake(1).vertices;
  std::set<Vertex> seen{Vertex::base()};
  std::deque<Vertex> queue{Vertex::base()};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (long p : {2, 3})
      for (const auto& w : neighbors(v, p)) {
        Integer d = oracle::hyperdistance(IntMat2::identity(), w.rep());
        if (24 % d == 0 && seen.insert(w).second) queue.push_back(w);
      }
  }
  o.expect(s.size() == seen.size(), "snake(1) has " + std::to_string(s.size()) + ", BFS finds " +
                                        std::to_string(seen.size()));
  o.expect(std::set<Vertex>(s.begin(), s.end()) == seen, "snake(1) vertex sets differ");
  o.expect(seen.size() == 110, "BFS count " + std::to_string(seen.size()));
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto x = random_vertex_state(seed, 25, 40);
    for (long n = 1; n <= 40; ++n) {
      auto p = project(x, ProjectionKind::sphere, n);
      auto lhs = apply_hamiltonian(p);
      auto rhs = Complex(std::log(static_cast<double>(n))) * p;
      o.expect(max_difference(lhs, rhs) == 0.0, "H P_N, N=" + std::to_string(n));
    }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = random_kernel(seed, 5, 6, seed % 2 == 0);
    auto xi = random_coset_state(seed + 500, 6, 10);
    for (double t : {0.5, 1.0, std::numbers::pi}) {
      double err = evolve_conjugation_error(f, xi, t);
      std::ostringstream msg;
      msg << "conjugation error " << err << " at t=" << t;
      o.expect(err <= 1e-12, msg.str());
    }
  }
  auto base = VertexState::delta(Vertex::base());
  auto t6 = hecke_apply(base, 6);
  o.expect(max_difference(hecke_apply(hecke_apply(base, 3), 2), t6) == 0.0, "T2 T3 != T6");
  o.expect(max_difference(hecke_apply(hecke_apply(base, 2), 3), t6) == 0.0, "T3 T2 != T6");
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (double beta : {3.0, 4.0}) {
    double coset_target = zeta(beta) * zeta(beta - 1.0);
    double vertex_target = coset_target / zeta(2.0 * beta);
    double coset = partition_function(beta, 10000, Mode::coset);
    double vertex = partition_function(beta, 10000, Mode::vertex);
    std::ostringstream c, v;
    c << "coset beta=" << beta << " got " << coset << " target " << coset_target;
    v << "vertex beta=" << beta << " got " << vertex << " target " << vertex_target;
    o.expect(std::abs(coset - coset_target) / coset_target < 1e-3, c.str());
    o.expect(std::abs(vertex - vertex_target) / vertex_target < 1e-3, v.str());
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  ReplicateFamily family(big_j_series(replicate_base_precision(6, 20)));
  for (long k = 1; k <= 6; ++k) {
    QSeries r = replicate(family, k, 20);
    o.expect(r.agrees_with(family.base, 20), "J^(" + std::to_string(k) + ") != J");
  }
  auto table = load_mckay_thompson(BP_DATA_DIR "/mckay_thompson.csv");
  auto it = table.find("2A");
  o.expect(it != table.end(), "2A missing from the table");
  if (it != table.end()) {
    ReplicateFamily t2a(it->second);
    QSeries r = replicate(t2a, 2, 10);
    o.expect(r.agrees_with(big_j_series(10), 10), "T_2A^(2) != J");
  }
  ReplicateFamily numeric(big_j_series(replicate_base_precision(3, 80)));
  for (long k : {2L, 3L}) replicate(numeric, k, 80);
  const std::complex<double> samples[] = {{0.1, 1.0}, {-0.3, 1.1}, {0.45, 0.95}, {0.2, 1.25}, {-0.15, 1.05}};
  for (long k : {2L, 3L})
    for (auto z : samples) {
      auto check = functional_equation(numeric, k, z, 80);
      std::ostringstream msg;
      msg << "functional equation k=" << k << " z=" << z << " error " << check.relative_error;
      o.expect(check.relative_error < 1e-8, msg.str());
    }
  return o;
}

Outcome criterion9() {
  Outcome o;
  QSeries J = big_j_series(60);
  auto at_i = evaluate(J, {0.0, 1.0}, 50);
  std::complex<double> rho = std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi / 3.0));
  auto at_rho = evaluate(J, rho, 50);
  std::ostringstream a, b;
  a << "J(i) = " << at_i.value;
  b << "J(rho) = " << at_rho.value;
  o.expect(std::abs(at_i.value - 984.0) < 1e-6, a.str());
  o.expect(std::abs(at_rho.value + 744.0) < 1e-6, b.str());
  QSeries j = j_series(10);
  o.expect(j.coeff(1) == 196884, "E4^3/Delta gives c1 = " + j.coeff(1).get_str());
  // Second path: Delta = q * eta^24 by Euler's pentagonal theorem.
  QSeries eta24 = oracle::pentagonal_eta(12).pow(24);
  QSeries j_eta = eisenstein_e4(12).pow(3) * eta24.inverse();  // q * j
  o.expect(j_eta.coeff(2) == 196884, "eta path gives c1 = " + j_eta.coeff(2).get_str());
  QSeries delta_e6 = Rat(1, 1728) * (eisenstein_e4(12).pow(3) - eisenstein_e6(12).pow(2));
  for (long n = 1; n <= 12; ++n)
    o.expect(delta_e6.coeff(n) == eta24.coeff(n - 1), "Delta paths differ at q^" + std::to_string(n));
  return o;
}

struct Captured {
  int status;
  std::string out;
};

Captured capture(const std::string& args) {
  std::string command = std::string("'") + BP_EXE + "' " + args + " 2>/dev/null";
  Captured c{-1, {}};
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) c.out.append(buffer.data(), n);
  c.status = pclose(pipe);
  return c;
}

Outcome criterion10() {
  Outcome o;
  const std::string csv = std::string("'") + BP_DATA_DIR + "/mckay_thompson.csv'";
  const std::vector<std::string> corpus = {
      "canon --matrix '4,3;2,2' --json",
      "dist --u '1,0;0,1' --v '6,0;0,1' --json",
      "neighbors --vertex '1,0;0,1' --p 2 --json",
      "sphere --center '1,0;0,1' --n 12 --json",
      "ball --center '2,1;0,3' --radius 6 --json",
      "geodesic --u '1,0;0,1' --v '12,5;0,7' --json",
      "thread --n 12",
      "thread --n 6 --format dot",
      "snake --n 2",
      "al --n 30 --e 5 --json",
      "normalizer --n 36 --matrix '1,1/6;0,1' --json",
      "stab-check --n 6 --samples 50 --seed 9",
      "orbit --gen '0,-1;6,0' --vertex '1,0;0,1'",
      "invariant-tree --gen '0,-1;4,0' --gen '1,1;0,1' --format dot",
      "hecke --n 6 --vertex '1,0;0,1'",
      "project --kind snake --n 2 --ball 8",
      "evolve-check --seed 4 --trials 3",
      "export --kind ball --center '1,0;0,1' --n 4",
      "replicate --series " + csv + " --class 2A --k 2 --terms 10",
      "verify-replicable --builtin J --k-max 4 --terms 8 --numeric-terms 40",
  };
  for (const auto& args : corpus) {
    Captured first = capture(args), second = capture(args);
    o.expect(first.status == 0, "exit status " + std::to_string(first.status) + " for: " + args);
    o.expect(!first.out.empty(), "empty output for: " + args);
    o.expect(first.out == second.out, "outputs differ for: " + args);
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "valence law", 5, criterion1},
      {2, "sphere counts vs brute force", 10, criterion2},
      {3, "metric and factorization", 10, criterion3},
      {4, "stabilizer suite", 30, criterion4},
      {5, "snake size", 5, criterion5},
      {6, "spectral identities", 5, criterion6},
      {7, "partition truncations", 5, criterion7},
      {8, "replication", 30, criterion8},
      {9, "classical values", 5, criterion9},
      {10, "CLI golden determinism", 10, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds)
      o.expect(false, "runtime " + std::to_string(seconds) + " s exceeds " +
                          std::to_string(c.budget_seconds) + " s");
    bool pass = o.failures.empty();
    failed += !pass;
    std::printf("criterion %d (%s): %s  [%ld checks, %.2f s]\n", c.number, c.name, pass ? "PASS" : "FAIL",
                o.checks, seconds);
    for (std::size_t i = 0; i < o.failures.size() && i < 5; ++i)
      std::printf("    %s\n", o.failures[i].c_str());
    if (o.failures.size() > 5) std::printf("    ... %zu more\n", o.failures.size() - 5);
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
