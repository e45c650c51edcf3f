#pragma once

// Groups like Gamma_0(N) acting on the big picture: membership tests,
// Atkin-Lehner involutions, threads, snakes, normalizers and orbits.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "bp/arith.hpp"
#include "bp/picture.hpp"

namespace bp {

/// An element of PGL2+(Q), i.e. a projective class of rational matrices.
using GroupElement = PglClass;

/// The action of g on vertices. A vertex with row basis h is sent to the
/// class of h * g^{-1}; with this convention the joint stabilizer of nu_1
/// and nu_N is Gamma_0(N) (lower-left entry divisible by N).
Vertex act(const GroupElement& g, const Vertex& v);

/// g is (up to scalars) in SL2(Z) with lower-left entry divisible by n.
bool in_gamma0(const GroupElement& g, long n);

/// Membership in Gamma_0(m|l), the joint stabilizer of nu_l and nu_m:
/// diag(l,1) * g * diag(l,1)^{-1} lies in Gamma_0(m/l). Throws unless l | m.
bool in_gamma0_ml(const GroupElement& g, long m, long l);

/// Divisors e of n with gcd(e, n/e) = 1, ascending.
std::vector<long> exact_divisors(long n);

/// Designated representative of the Atkin-Lehner coset W_e of Gamma_0(n):
/// identity for e = 1, [[0,-1],[n,0]] for e = n, otherwise [[e, b],[n, e*d]]
/// with e*d - (n/e)*b = 1 and b the least nonnegative solution.
GroupElement atkin_lehner(long n, long e);

/// g lies in Gamma_0(n) * W_e for some exact divisor e of n.
bool in_gamma0_plus(const GroupElement& g, long n);

struct ThreadGraph {
  long n = 1;
  std::vector<Vertex> vertices;  // nu_d for d | n, sorted
};

struct SnakeGraph {
  long n = 1;
  std::vector<Vertex> vertices;  // sorted
};

/// The (1|n)-thread: the product over p^k || n of the paths nu_1 .. nu_{p^k}.
ThreadGraph thread(long n);
bool in_thread(const Vertex& v, long n);

/// Minimum hyperdistance from v to a vertex of thread(n).
Integer distance_to_thread(const Vertex& v, long n);

/// Vertices whose hyperdistance to thread(n) divides 24.
SnakeGraph snake(long n);
bool in_snake(const Vertex& v, long n);

/// Largest h | 24 with h^2 | n.
long normalizer_h(long n);

/// Membership in Gamma_0(n/h | h)+ with h = normalizer_h(n).
bool in_normalizer(const GroupElement& g, long n);

/// Conjugation by g_l = diag(l,1): g_l * g * g_l^{-1}.
GroupElement conjugate_by_diag(const GroupElement& g, long l);

/// Deterministic pseudorandom element of Gamma_0(n): a product of
/// `word_length` factors [[a, b],[n*c, d]] with |c|, |d| <= entry_bound.
/// An entry bound of 0 only admits the identity factor.
GroupElement random_gamma0_element(long n, std::uint64_t seed, int word_length,
                                   long entry_bound = 12);

/// Closure of {v} under the generators and their inverses. Throws
/// DomainError("orbit exceeds cap") when more than `cap` vertices appear.
std::vector<Vertex> orbit(const std::vector<GroupElement>& gens, const Vertex& v,
                          std::size_t cap);

/// Orbit of nu_1 together with, for every pair of orbit points u, v and every
/// prime p, the p-tree path from u to the p-component of v (the components
/// of u at other primes held fixed). Sorted.
std::vector<Vertex> invariant_tree_vertices(const std::vector<GroupElement>& gens,
                                            std::size_t cap);
/// The same tree in the graph JSON schema, with "root" set to nu_1.
nlohmann::ordered_json invariant_tree(const std::vector<GroupElement>& gens, std::size_t cap);

}  // namespace bp
