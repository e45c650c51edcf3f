#include "bp/spectral.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace bp {

Mode parse_mode(const std::string& name) {
  if (name == "vertex") return Mode::vertex;
  if (name == "coset") return Mode::coset;
  throw DomainError("unknown mode '" + name + "', expected vertex or coset");
}

std::string mode_name(Mode mode) { return mode == Mode::vertex ? "vertex" : "coset"; }

bool operator<(const LatticeCoset& x, const LatticeCoset& y) {
  Integer dx = x.det(), dy = y.det();
  if (dx != dy) return dx < dy;
  return x.rep_ < y.rep_;
}

namespace {

template <class Key>
double max_difference_impl(const SparseVector<Key>& x, const SparseVector<Key>& y) {
  double worst = 0.0;
  for (const auto& [k, a] : x.entries()) worst = std::max(worst, std::abs(a - y.at(k)));
  for (const auto& [k, a] : y.entries()) worst = std::max(worst, std::abs(a - x.at(k)));
  return worst;
}

double log_of(const Integer& n) {
  // Exact for the sizes met here; mpz_get_d rounds beyond 2^53.
  return std::log(n.get_d());
}

double log_of(const Rat& r) { return log_of(Integer(r.get_num())) - log_of(Integer(r.get_den())); }

// Multiplies g by the least positive integer L making it integral.
std::pair<IntMat2, Integer> clear_denominators(const RatMat2& g) {
  Integer l = lcm(lcm(g.a.get_den(), g.b.get_den()), lcm(g.c.get_den(), g.d.get_den()));
  auto scale = [&](const Rat& x) { return Integer(x.get_num() * (l / x.get_den())); };
  return {IntMat2{scale(g.a), scale(g.b), scale(g.c), scale(g.d)}, l};
}

}  // namespace

double max_difference(const VertexState& x, const VertexState& y) { return max_difference_impl(x, y); }
double max_difference(const CosetState& x, const CosetState& y) { return max_difference_impl(x, y); }

VertexState primitivize(const CosetState& xi) {
  VertexState out;
  for (const auto& [c, a] : xi.entries()) out.add(c.primitivize(), a);
  return out;
}

double hamiltonian(const Vertex& v) { return log_of(v.det()); }
double hamiltonian(const LatticeCoset& c) { return log_of(c.det()); }

VertexState apply_hamiltonian(const VertexState& xi) {
  VertexState out;
  for (const auto& [v, a] : xi.entries()) out.add(v, hamiltonian(v) * a);
  return out;
}

CosetState apply_hamiltonian(const CosetState& xi) {
  CosetState out;
  for (const auto& [c, a] : xi.entries()) out.add(c, hamiltonian(c) * a);
  return out;
}

VertexState hecke_apply(const VertexState& xi, long n) {
  if (n < 1) throw DomainError("Hecke index must be >= 1");
  VertexState out;
  for (const auto& [v, a] : xi.entries())
    for (const auto& w : sphere(v, n)) out.add(w, a);
  return out;
}

ProjectionKind parse_projection_kind(const std::string& name) {
  if (name == "sphere") return ProjectionKind::sphere;
  if (name == "thread") return ProjectionKind::thread;
  if (name == "snake") return ProjectionKind::snake;
  throw DomainError("unknown projection '" + name + "', expected sphere, thread or snake");
}

VertexState project(const VertexState& xi, ProjectionKind kind, long n) {
  if (n < 1) throw DomainError("N must be >= 1");
  auto keep = [&](const Vertex& v) {
    switch (kind) {
      case ProjectionKind::sphere: return v.det() == n;
      case ProjectionKind::thread: return in_thread(v, n);
      case ProjectionKind::snake: return in_snake(v, n);
    }
    return false;
  };
  VertexState out;
  for (const auto& [v, a] : xi.entries())
    if (keep(v)) out.add(v, a);
  return out;
}

VertexState group_unitary(const GroupElement& g, const VertexState& xi) {
  VertexState out;
  for (const auto& [v, a] : xi.entries()) out.add(act(g, v), a);
  return out;
}

DoubleCoset DoubleCoset::of(const RatMat2& g) {
  if (sgn(g.det()) <= 0) throw DomainError("not in GL2+(Q)");
  auto [m, l] = clear_denominators(g);
  Integer s1 = content(m);
  Integer s2 = m.det() / s1;
  DoubleCoset dc{Rat(s1, l), Rat(s2, l)};
  dc.r1.canonicalize();
  dc.r2.canonicalize();
  return dc;
}

std::string DoubleCoset::id() const {
  std::ostringstream os;
  os << r1 << ",0;0," << r2;
  return os.str();
}

bool operator<(const DoubleCoset& x, const DoubleCoset& y) {
  Rat dx = x.det(), dy = y.det();
  if (dx != dy) return dx < dy;
  return x.r1 < y.r1;
}

Complex kernel_value(const Kernel& f, const RatMat2& g) { return f.at(DoubleCoset::of(g)); }

std::vector<RatMat2> left_coset_reps(const DoubleCoset& dc) {
  Integer m = Rat(dc.r2 / dc.r1).get_num();
  if (!m.fits_slong_p()) throw DomainError("double coset index too large");
  std::vector<RatMat2> out;
  for (const auto& p : primitive_hnf_matrices(m.get_si())) out.push_back(dc.r1 * RatMat2(p));
  return out;
}

CosetState represent(const Kernel& f, const CosetState& xi) {
  CosetState out;
  for (const auto& [dc, value] : f.entries()) {
    auto reps = left_coset_reps(dc);
    for (const auto& [h, amp] : xi.entries())
      for (const auto& r : reps) {
        RatMat2 g = r * RatMat2(h.rep());
        if (!g.is_integral()) continue;
        out.add(LatticeCoset::of(IntMat2{g.a.get_num(), g.b.get_num(), g.c.get_num(), g.d.get_num()}),
                value * amp);
      }
  }
  return out;
}

Kernel convolve(const Kernel& f1, const Kernel& f2) {
  // Integral left cosets carrying f2.
  std::vector<std::pair<RatMat2, Complex>> lower;
  for (const auto& [dc, value] : f2.entries())
    for (const auto& k : left_coset_reps(dc))
      if (k.is_integral()) lower.emplace_back(k, value);
  // Every double coset in D1 * D2 contains d1 * y with y a right coset
  // representative of D2, i.e. a transposed left coset representative.
  std::set<DoubleCoset> candidates;
  for (const auto& [d1, v1] : f1.entries())
    for (const auto& [d2, v2] : f2.entries())
      for (const auto& k : left_coset_reps(d2)) {
        RatMat2 y{k.a, k.c, k.b, k.d};
        candidates.insert(DoubleCoset::of(RatMat2{d1.r1, 0, 0, d1.r2} * y));
      }
  Kernel out;
  for (const auto& e : candidates) {
    RatMat2 g{e.r1, 0, 0, e.r2};
    Complex sum = 0.0;
    for (const auto& [k, value] : lower) sum += kernel_value(f1, g * k.inverse()) * value;
    out.add(e, sum);
  }
  return out;
}

Kernel time_evolve(const Kernel& f, double t) {
  Kernel out;
  for (const auto& [dc, value] : f.entries())
    out.add(dc, std::polar(1.0, t * log_of(dc.det())) * value);
  return out;
}

CosetState evolve_phases(const CosetState& xi, double t) {
  CosetState out;
  for (const auto& [c, a] : xi.entries()) out.add(c, std::polar(1.0, t * hamiltonian(c)) * a);
  return out;
}

double evolve_conjugation_error(const Kernel& f, const CosetState& xi, double t) {
  CosetState lhs = evolve_phases(represent(f, evolve_phases(xi, -t)), t);
  CosetState rhs = represent(time_evolve(f, t), xi);
  return max_difference(lhs, rhs);
}

namespace {

Complex random_amplitude(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double re = unit(rng);
  double im = unit(rng);
  return {re, im};
}

template <class T>
const T& pick(const std::vector<T>& xs, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> idx(0, xs.size() - 1);
  return xs[idx(rng)];
}

}  // namespace

Kernel random_kernel(std::uint64_t seed, int terms, long max_index, bool integral) {
  if (terms < 0 || max_index < 1) throw DomainError("invalid random kernel parameters");
  std::mt19937_64 rng(seed);
  std::vector<Rat> scales = integral ? std::vector<Rat>{1, 1, 2}
                                     : std::vector<Rat>{1, 2, Rat(1, 2), Rat(1, 3)};
  std::uniform_int_distribution<long> index(1, max_index);
  Kernel f;
  for (int i = 0; i < terms; ++i) {
    Rat r1 = pick(scales, rng);
    long m = index(rng);
    f.add(DoubleCoset{r1, r1 * m}, random_amplitude(rng));
  }
  return f;
}

CosetState random_coset_state(std::uint64_t seed, int terms, long max_det) {
  if (terms < 0 || max_det < 1) throw DomainError("invalid random state parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> det(1, max_det);
  CosetState xi;
  for (int i = 0; i < terms; ++i) {
    auto hnfs = hnf_matrices(det(rng));
    xi.add(LatticeCoset::of(pick(hnfs, rng)), random_amplitude(rng));
  }
  return xi;
}

VertexState random_vertex_state(std::uint64_t seed, int terms, long max_det) {
  if (terms < 0 || max_det < 1) throw DomainError("invalid random state parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> det(1, max_det);
  VertexState xi;
  for (int i = 0; i < terms; ++i) {
    auto hnfs = primitive_hnf_matrices(det(rng));
    xi.add(Vertex::of(RatMat2(pick(hnfs, rng))), random_amplitude(rng));
  }
  return xi;
}

std::vector<long> class_counts(long x, Mode mode) {
  if (x < 1) throw DomainError("X must be >= 1");
  std::vector<long> count(static_cast<std::size_t>(x + 1), 0);
  if (mode == Mode::coset) {
    for (long d = 1; d <= x; ++d)
      for (long m = d; m <= x; m += d) count[m] += d;
  } else {
    for (long n = 1; n <= x; ++n) count[n] = n;
    for (long p = 2; p <= x; ++p) {
      if (!is_prime(p)) continue;
      for (long m = p; m <= x; m += p) count[m] = count[m] / p * (p + 1);
    }
  }
  return count;
}

double pairwise_sum(const std::vector<double>& terms) {
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> double {
    if (hi - lo <= 8) {
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += terms[i];
      return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return self(self, lo, mid) + self(self, mid, hi);
  };
  return rec(rec, 0, terms.size());
}

namespace {

void check_range(double beta, long x) {
  if (!(beta > 2.0)) throw DomainError("divergent range");
  if (x < 1) throw DomainError("X must be >= 1");
}

}  // namespace

double partition_function(double beta, long x, Mode mode) {
  check_range(beta, x);
  auto count = class_counts(x, mode);
  std::vector<double> terms;
  for (long n = 1; n <= x; ++n) terms.push_back(count[n] * std::pow(double(n), -beta));
  return pairwise_sum(terms);
}

double gibbs_expectation(const std::function<double(long)>& obs_of_det, double beta, long x,
                         Mode mode) {
  check_range(beta, x);
  auto count = class_counts(x, mode);
  std::vector<double> weights, weighted;
  for (long n = 1; n <= x; ++n) {
    double w = count[n] * std::pow(double(n), -beta);
    weights.push_back(w);
    weighted.push_back(w * obs_of_det(n));
  }
  return pairwise_sum(weighted) / pairwise_sum(weights);
}

double gibbs_expectation_classes(const std::function<double(const IntMat2&)>& obs, double beta,
                                 long x, Mode mode) {
  check_range(beta, x);
  std::vector<double> weights, weighted;
  for (long n = 1; n <= x; ++n) {
    double w = std::pow(double(n), -beta);
    auto classes = mode == Mode::coset ? hnf_matrices(n) : primitive_hnf_matrices(n);
    for (const auto& m : classes) {
      weights.push_back(w);
      weighted.push_back(w * obs(m));
    }
  }
  return pairwise_sum(weighted) / pairwise_sum(weights);
}

namespace {

template <class Key>
nlohmann::ordered_json state_json_impl(const SparseVector<Key>& xi, Mode mode) {
  nlohmann::ordered_json doc;
  doc["schema"] = "bp/1";
  doc["mode"] = mode_name(mode);
  auto& es = doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& [k, a] : xi.entries())
    es.push_back({{"id", k.id()}, {"re", a.real()}, {"im", a.imag()}});
  return doc;
}

}  // namespace

nlohmann::ordered_json state_json(const VertexState& xi) { return state_json_impl(xi, Mode::vertex); }
nlohmann::ordered_json state_json(const CosetState& xi) { return state_json_impl(xi, Mode::coset); }

}  // namespace bp
