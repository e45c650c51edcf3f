#include "bp/picture.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bp {

Vertex Vertex::of(const RatMat2& g) { return Vertex(hnf_reduce(primitive_rep(g).rep())); }

Vertex Vertex::nu(long n) {
  if (n < 1) throw DomainError("nu_N requires N >= 1");
  return Vertex(IntMat2::diag(n, 1));
}

bool operator<(const Vertex& x, const Vertex& y) {
  Integer dx = x.det(), dy = y.det();
  if (dx != dy) return dx < dy;
  if (x.rep_.a != y.rep_.a) return x.rep_.a < y.rep_.a;
  return x.rep_.b < y.rep_.b;
}

Integer hyperdistance(const Vertex& u, const Vertex& v) {
  // u * v^{-1} up to the scalar det(v).
  return delta1(RatMat2(u.rep() * v.rep().adjugate()));
}

std::vector<IntMat2> hnf_matrices(long n) {
  if (n < 1) throw DomainError("determinant must be positive");
  std::vector<IntMat2> out;
  for (long a : divisors(n)) {
    long d = n / a;
    for (long b = 0; b < d; ++b) out.emplace_back(a, b, 0, d);
  }
  return out;
}

std::vector<IntMat2> primitive_hnf_matrices(long n) {
  if (n < 1) throw DomainError("determinant must be positive");
  std::vector<IntMat2> out;
  for (long a : divisors(n)) {
    long d = n / a;
    long g = std::gcd(a, d);
    for (long b = 0; b < d; ++b)
      if (std::gcd(g, b) == 1) out.emplace_back(a, b, 0, d);
  }
  return out;
}

namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace

std::vector<Vertex> neighbors(const Vertex& v, long p) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(p + 1));
  out.push_back(Vertex::of(IntMat2::diag(p, 1) * v.rep()));
  for (long b = 0; b < p; ++b) out.push_back(Vertex::of(IntMat2(1, b, 0, p) * v.rep()));
  return sorted_unique(std::move(out));
}

std::vector<Vertex> sphere(const Vertex& center, long n) {
  if (n < 1) throw DomainError("sphere radius must be >= 1");
  std::vector<Vertex> out;
  for (const auto& m : primitive_hnf_matrices(n)) out.push_back(Vertex::of(m * center.rep()));
  return sorted_unique(std::move(out));
}

std::vector<Vertex> ball(const Vertex& center, long radius) {
  if (radius < 1) throw DomainError("ball radius must be >= 1");
  std::vector<Vertex> out;
  for (long n = 1; n <= radius; ++n) {
    auto s = sphere(center, n);
    out.insert(out.end(), s.begin(), s.end());
  }
  return sorted_unique(std::move(out));
}

Geodesic geodesic(const Vertex& u, const Vertex& v) {
  Geodesic path{{u}};
  if (u == v) return path;
  // v = m*u projectively with m primitive, so L(m*u) has cyclic quotient in
  // L(u) and contains exactly one intermediate lattice of each index e | det m.
  IntMat2 m = primitive_rep(RatMat2(v.rep() * u.rep().adjugate())).rep();
  IntMat2 sub = m * u.rep();
  long n = m.det().get_si();
  long e = 1;
  for (auto [p, k] : factorize(n)) {
    for (int i = 0; i < k; ++i) {
      e *= p;
      if (e == n) {
        path.vertices.push_back(v);
      } else {
        path.vertices.push_back(Vertex::of(hnf_of_span({sub, Integer(e) * u.rep()})));
      }
    }
  }
  return path;
}

int p_adic_distance(const Vertex& u, const Vertex& v, long p) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  return valuation(hyperdistance(u, v), p);
}

Vertex project_to_tree(const Vertex& v, long p) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  int e = valuation(v.det(), p);
  if (e == 0) return Vertex::base();
  Integer pe;
  mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return Vertex::of(hnf_of_span({v.rep(), pe * IntMat2::identity()}));
}

bool qlattice_compatible(const FiniteLevelRho& rho, const RatMat2& g) {
  if (rho.level < 1) throw DomainError("level must be >= 1");
  if (sgn(g.det()) <= 0) throw DomainError("not in GL2+(Q)");
  // g*rho integral iff rho/alpha_g integral; with alpha_g = u/w in lowest
  // terms that means every entry of rho is divisible by u.
  Integer divisor = alpha_of(g).get_num();
  if (divisor == 1) return true;
  if (!divisor.fits_slong_p() || rho.level % divisor.get_si() != 0)
    throw DomainError("level insufficient");
  long u = divisor.get_si();
  return std::all_of(rho.entries.begin(), rho.entries.end(),
                     [&](long x) { return ((x % u) + u) % u == 0; });
}

GraphFormat parse_graph_format(const std::string& name) {
  if (name == "dot") return GraphFormat::dot;
  if (name == "json") return GraphFormat::json;
  throw DomainError("unknown format '" + name + "'");
}

namespace {

struct Edge {
  std::size_t from, to;
  long p;
};

std::vector<Edge> prime_edges(const std::vector<Vertex>& vs) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      Integer dist = hyperdistance(vs[i], vs[j]);
      if (dist.fits_slong_p() && is_prime(dist.get_si())) edges.push_back({i, j, dist.get_si()});
    }
  return edges;
}

}  // namespace

nlohmann::ordered_json graph_json(std::vector<Vertex> vertices) {
  vertices = sorted_unique(std::move(vertices));
  nlohmann::ordered_json doc;
  doc["schema"] = "bp/1";
  auto& vs = doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : vertices) {
    nlohmann::ordered_json det = v.det().fits_slong_p() ? nlohmann::ordered_json(v.det().get_si())
                                                        : nlohmann::ordered_json(v.det().get_str());
    vs.push_back({{"id", v.id()}, {"det", det}});
  }
  auto& es = doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : prime_edges(vertices))
    es.push_back({{"u", vertices[e.from].id()}, {"v", vertices[e.to].id()}, {"p", e.p}});
  return doc;
}

std::string export_graph(std::vector<Vertex> vertices, GraphFormat format) {
  if (format == GraphFormat::json) return graph_json(std::move(vertices)).dump(2) + "\n";
  vertices = sorted_unique(std::move(vertices));
  std::ostringstream os;
  os << "digraph bp {\n";
  for (const auto& v : vertices) os << "  \"" << v.id() << "\" [label=\"" << v.id() << "\"];\n";
  // Sorted order puts the endpoint nearer the base vertex first.
  for (const auto& e : prime_edges(vertices))
    os << "  \"" << vertices[e.from].id() << "\" -> \"" << vertices[e.to].id()
       << "\" [label=\"" << e.p << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace bp
