#include "bp/congruence.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace bp {

Vertex act(const GroupElement& g, const Vertex& v) {
  // g^{-1} is proportional to adj(g), and scalars do not move vertices.
  return Vertex::of(RatMat2(v.rep() * g.rep().adjugate()));
}

bool in_gamma0(const GroupElement& g, long n) {
  if (n < 1) throw DomainError("level must be >= 1");
  const IntMat2& r = g.rep();
  return r.det() == 1 && mpz_divisible_ui_p(r.c.get_mpz_t(), static_cast<unsigned long>(n));
}

GroupElement conjugate_by_diag(const GroupElement& g, long l) {
  if (l < 1) throw DomainError("conjugating scale must be >= 1");
  // diag(l,1)^{-1} is proportional to diag(1,l).
  return GroupElement(RatMat2(IntMat2::diag(l, 1) * g.rep() * IntMat2::diag(1, l)));
}

bool in_gamma0_ml(const GroupElement& g, long m, long l) {
  if (m < 1 || l < 1 || m % l != 0) throw DomainError("l must divide M");
  return in_gamma0(conjugate_by_diag(g, l), m / l);
}

std::vector<long> exact_divisors(long n) {
  std::vector<long> out;
  for (long e : divisors(n))
    if (std::gcd(e, n / e) == 1) out.push_back(e);
  return out;
}

GroupElement atkin_lehner(long n, long e) {
  if (n < 1 || e < 1 || n % e != 0 || std::gcd(e, n / e) != 1)
    throw DomainError("e must be an exact divisor of N");
  if (e == 1) return GroupElement(RatMat2(IntMat2::identity()));
  if (e == n) return GroupElement(RatMat2(IntMat2(0, -1, n, 0)));
  // [[e*a, b],[n*c, e*d]] with a = c = 1: e*d - (n/e)*b = 1.
  Integer m = n / e;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), Integer(e).get_mpz_t());
  Integer b = mod(-inv, Integer(e));
  Integer d = (1 + m * b) / e;
  return GroupElement(RatMat2(IntMat2(e, b, n, e * d)));
}

bool in_gamma0_plus(const GroupElement& g, long n) {
  for (long e : exact_divisors(n))
    if (in_gamma0(g * atkin_lehner(n, e).inverse(), n)) return true;
  return false;
}

ThreadGraph thread(long n) {
  if (n < 1) throw DomainError("N must be >= 1");
  ThreadGraph t{n, {}};
  for (long d : divisors(n)) t.vertices.push_back(Vertex::nu(d));
  std::sort(t.vertices.begin(), t.vertices.end());
  return t;
}

bool in_thread(const Vertex& v, long n) {
  if (n < 1) throw DomainError("N must be >= 1");
  const IntMat2& r = v.rep();
  return r.d == 1 && mpz_divisible_p(Integer(n).get_mpz_t(), r.a.get_mpz_t());
}

Integer distance_to_thread(const Vertex& v, long n) {
  auto t = thread(n);
  Integer best = hyperdistance(v, t.vertices.front());
  for (const auto& w : t.vertices) best = std::min(best, Integer(hyperdistance(v, w)));
  return best;
}

SnakeGraph snake(long n) {
  auto t = thread(n);
  // For each vertex the minimum over the thread divides the distance to every
  // thread vertex, so this union is exactly the snake.
  std::set<Vertex> found;
  for (const auto& w : t.vertices)
    for (long d : divisors(24))
      for (const auto& v : sphere(w, d)) found.insert(v);
  return {n, std::vector<Vertex>(found.begin(), found.end())};
}

bool in_snake(const Vertex& v, long n) {
  Integer dist = distance_to_thread(v, n);
  return dist.fits_slong_p() && 24 % dist.get_si() == 0;
}

long normalizer_h(long n) {
  if (n < 1) throw DomainError("N must be >= 1");
  long best = 1;
  for (long h : divisors(24))
    if (n % (h * h) == 0) best = h;
  return best;
}

bool in_normalizer(const GroupElement& g, long n) {
  long h = normalizer_h(n);
  return in_gamma0_plus(conjugate_by_diag(g, h), n / (h * h));
}

GroupElement random_gamma0_element(long n, std::uint64_t seed, int word_length,
                                   long entry_bound) {
  if (n < 1) throw DomainError("N must be >= 1");
  if (word_length < 1) throw DomainError("word length must be >= 1");
  if (entry_bound < 0) throw DomainError("entry bound must be >= 0");
  IntMat2 word = IntMat2::identity();
  if (entry_bound == 0) return GroupElement(RatMat2(word));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-entry_bound, entry_bound);
  for (int i = 0; i < word_length; ++i) {
    long c, d;
    do {
      c = entry(rng);
      d = entry(rng);
    } while (std::gcd(n * c, d) != 1);
    // a*d - b*(n*c) = 1, then shift along the solution line.
    ExtGcd eg = ext_gcd(d, Integer(n * c));
    Integer a = eg.x, b = -eg.y;
    long t = entry(rng);
    a += t * n * c;
    b += t * d;
    word = word * IntMat2(a, b, n * c, d);
  }
  return GroupElement(RatMat2(word));
}

std::vector<Vertex> orbit(const std::vector<GroupElement>& gens, const Vertex& v,
                          std::size_t cap) {
  if (cap < 1) throw DomainError("cap must be >= 1");
  std::vector<GroupElement> moves;
  for (const auto& g : gens) {
    moves.push_back(g);
    moves.push_back(g.inverse());
  }
  std::set<Vertex> seen{v};
  std::deque<Vertex> queue{v};
  while (!queue.empty()) {
    Vertex cur = queue.front();
    queue.pop_front();
    for (const auto& g : moves) {
      Vertex next = act(g, cur);
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw DomainError("orbit exceeds cap");
        queue.push_back(next);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Vertex> invariant_tree_vertices(const std::vector<GroupElement>& gens,
                                            std::size_t cap) {
  auto points = orbit(gens, Vertex::base(), cap);
  std::set<Vertex> tree(points.begin(), points.end());
  // For each ordered pair (u, v) and each prime p, walk from u through the
  // p-tree at u until the p-component of v is reached; the other components
  // stay those of u.
  for (const auto& u : points)
    for (const auto& v : points) {
      Integer d = hyperdistance(u, v);
      if (!d.fits_slong_p()) throw DomainError("orbit points too far apart");
      for (auto [p, k] : factorize(d.get_si())) {
        Vertex w = u;
        for (int left = p_adic_distance(w, v, p); left > 0; --left) {
          for (const auto& x : neighbors(w, p))
            if (p_adic_distance(x, v, p) < left) {
              w = x;
              break;
            }
          tree.insert(w);
        }
      }
    }
  return {tree.begin(), tree.end()};
}

nlohmann::ordered_json invariant_tree(const std::vector<GroupElement>& gens, std::size_t cap) {
  auto doc = graph_json(invariant_tree_vertices(gens, cap));
  doc["root"] = Vertex::base().id();
  return doc;
}

}  // namespace bp
