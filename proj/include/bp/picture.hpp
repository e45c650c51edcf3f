#pragma once

// The big picture: projective classes of lattices commensurable with a base
// lattice, Conway's hyperdistance, the p-adic trees and local enumeration.
// The graph is implicit; every query is answered from canonical forms.

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "bp/arith.hpp"

namespace bp {

/// A node of the big picture, named by its primitive row-Hermite matrix
/// [[a,b],[0,d]] (content 1, 0 <= b < d). The base vertex nu_1 is the
/// identity; nu_N is diag(N, 1).
class Vertex {
public:
  /// The projective class of the lattice whose row basis is g.
  static Vertex of(const RatMat2& g);
  static Vertex base() { return Vertex(IntMat2::identity()); }
  static Vertex nu(long n);

  const IntMat2& rep() const { return rep_; }
  /// Hyperdistance to the base vertex.
  Integer det() const { return rep_.det(); }
  /// Text id "a,b;0,d".
  std::string id() const { return format_matrix(rep_); }

  friend bool operator==(const Vertex& x, const Vertex& y) { return x.rep_ == y.rep_; }
  friend bool operator!=(const Vertex& x, const Vertex& y) { return !(x == y); }
  /// Orders by hyperdistance to the base vertex, then by (a, b).
  friend bool operator<(const Vertex& x, const Vertex& y);

private:
  explicit Vertex(IntMat2 rep) : rep_(std::move(rep)) {}
  IntMat2 rep_;
};

inline Vertex vertex_of(const RatMat2& g) { return Vertex::of(g); }

Integer hyperdistance(const Vertex& u, const Vertex& v);

/// All row-Hermite matrices of determinant n; there are sigma_1(n) of them.
std::vector<IntMat2> hnf_matrices(long n);
/// The primitive ones among hnf_matrices(n).
std::vector<IntMat2> primitive_hnf_matrices(long n);

/// The p+1 vertices at hyperdistance p, sorted. Throws unless p is prime.
std::vector<Vertex> neighbors(const Vertex& v, long p);
/// All vertices at hyperdistance exactly n from center, sorted.
std::vector<Vertex> sphere(const Vertex& center, long n);
/// Union of sphere(center, n) for 1 <= n <= radius, sorted.
std::vector<Vertex> ball(const Vertex& center, long radius);

struct Geodesic {
  std::vector<Vertex> vertices;
};

/// A shortest path from u to v with prime steps, taking all steps at the
/// smallest prime first.
Geodesic geodesic(const Vertex& u, const Vertex& v);

/// Length of the path between u and v in the p-adic tree.
int p_adic_distance(const Vertex& u, const Vertex& v, long p);

/// The vertex whose p-component equals that of v and whose components at
/// every other prime equal those of the base vertex.
Vertex project_to_tree(const Vertex& v, long p);

/// A profinite integer matrix known modulo `level`.
struct FiniteLevelRho {
  long level = 1;
  std::array<long, 4> entries{};  // a, b, c, d residues
};

/// Whether g*rho stays integral, decided from rho at its finite level.
/// Throws DomainError("level insufficient") when the level cannot decide.
bool qlattice_compatible(const FiniteLevelRho& rho, const RatMat2& g);

enum class GraphFormat { dot, json };
GraphFormat parse_graph_format(const std::string& name);

/// Induced subgraph on the given vertices; edges join pairs at prime
/// hyperdistance. Vertices are deduplicated and sorted.
nlohmann::ordered_json graph_json(std::vector<Vertex> vertices);
std::string export_graph(std::vector<Vertex> vertices, GraphFormat format);

}  // namespace bp
