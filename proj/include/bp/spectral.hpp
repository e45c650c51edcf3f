#pragma once

// The GL2-system at an invertible fiber: state vectors on vertices and on
// integral lattice cosets, the Hamiltonian, Hecke operators, projections,
// the kernel representation with its time evolution, and Gibbs sums.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bp/arith.hpp"
#include "bp/congruence.hpp"
#include "bp/picture.hpp"

namespace bp {

using Complex = std::complex<double>;

enum class Mode { vertex, coset };
Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

/// An element of Gamma_1 \ M2+(Z): an integral matrix up to left SL2(Z)
/// multiplication, named by its row-Hermite form. Content is arbitrary.
class LatticeCoset {
public:
  static LatticeCoset of(const IntMat2& m) { return LatticeCoset(hnf_reduce(m)); }
  static LatticeCoset identity() { return LatticeCoset(IntMat2::identity()); }

  const IntMat2& rep() const { return rep_; }
  Integer det() const { return rep_.det(); }
  std::string id() const { return format_matrix(rep_); }
  /// The vertex of the projective class.
  Vertex primitivize() const { return Vertex::of(RatMat2(rep_)); }

  friend bool operator==(const LatticeCoset& x, const LatticeCoset& y) { return x.rep_ == y.rep_; }
  friend bool operator<(const LatticeCoset& x, const LatticeCoset& y);

private:
  explicit LatticeCoset(IntMat2 rep) : rep_(std::move(rep)) {}
  IntMat2 rep_;
};

/// A finitely supported complex function; exact zeros are never stored.
template <class Key>
class SparseVector {
public:
  using Map = std::map<Key, Complex>;

  SparseVector() = default;
  static SparseVector delta(const Key& k) {
    SparseVector v;
    v.add(k, 1.0);
    return v;
  }

  void add(const Key& k, Complex amp) {
    if (amp == Complex(0.0)) return;
    auto [it, inserted] = entries_.try_emplace(k, amp);
    if (!inserted) {
      it->second += amp;
      if (it->second == Complex(0.0)) entries_.erase(it);
    }
  }
  Complex at(const Key& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? Complex(0.0) : it->second;
  }
  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double norm() const {
    double s = 0.0;
    for (const auto& [k, a] : entries_) s += std::norm(a);
    return std::sqrt(s);
  }
  friend SparseVector operator+(SparseVector x, const SparseVector& y) {
    for (const auto& [k, a] : y.entries_) x.add(k, a);
    return x;
  }
  friend SparseVector operator-(SparseVector x, const SparseVector& y) {
    for (const auto& [k, a] : y.entries_) x.add(k, -a);
    return x;
  }
  friend SparseVector operator*(Complex s, const SparseVector& x) {
    SparseVector out;
    for (const auto& [k, a] : x.entries_) out.add(k, s * a);
    return out;
  }
  /// <x, y>, conjugate-linear in x.
  friend Complex inner(const SparseVector& x, const SparseVector& y) {
    Complex s = 0.0;
    for (const auto& [k, a] : x.entries_) s += std::conj(a) * y.at(k);
    return s;
  }
  friend bool operator==(const SparseVector& x, const SparseVector& y) {
    return x.entries_ == y.entries_;
  }

private:
  Map entries_;
};

using VertexState = SparseVector<Vertex>;
using CosetState = SparseVector<LatticeCoset>;

/// Largest absolute amplitude difference.
double max_difference(const VertexState& x, const VertexState& y);
double max_difference(const CosetState& x, const CosetState& y);

/// Sum of amplitudes over each projective class.
VertexState primitivize(const CosetState& xi);

/// H on a basis vector: log of the hyperdistance to nu_1, resp. log det.
double hamiltonian(const Vertex& v);
double hamiltonian(const LatticeCoset& c);
VertexState apply_hamiltonian(const VertexState& xi);
CosetState apply_hamiltonian(const CosetState& xi);

/// (T_N xi)(v) = sum of xi(w) over w at hyperdistance N from v.
VertexState hecke_apply(const VertexState& xi, long n);

enum class ProjectionKind { sphere, thread, snake };
ProjectionKind parse_projection_kind(const std::string& name);
/// Restriction to sphere(nu_1, N), thread(N) or snake(N).
VertexState project(const VertexState& xi, ProjectionKind kind, long n);

/// (U_g xi)(v) = xi(act(g^{-1}, v)), so U_g delta_w = delta_{act(g, w)}.
VertexState group_unitary(const GroupElement& g, const VertexState& xi);

/// A double coset Gamma_1 g Gamma_1 in GL2+(Q), named by the elementary
/// divisors r1 | r2 (r2/r1 a positive integer) of diag(r1, r2).
struct DoubleCoset {
  Rat r1, r2;
  static DoubleCoset of(const RatMat2& g);
  Rat det() const { return r1 * r2; }
  std::string id() const;
  friend bool operator==(const DoubleCoset& x, const DoubleCoset& y) {
    return x.r1 == y.r1 && x.r2 == y.r2;
  }
  friend bool operator<(const DoubleCoset& x, const DoubleCoset& y);
};

/// A finitely supported bi-Gamma_1-invariant function on GL2+(Q).
using Kernel = SparseVector<DoubleCoset>;

/// Value of f at the double coset of g.
Complex kernel_value(const Kernel& f, const RatMat2& g);

/// Representatives r1 * P of Gamma_1 \ D, P running over primitive row-Hermite
/// matrices of determinant r2/r1.
std::vector<RatMat2> left_coset_reps(const DoubleCoset& dc);

/// (pi(f) xi)(h) = sum over h' of f(h h'^{-1}) xi(h'), h, h' integral cosets.
CosetState represent(const Kernel& f, const CosetState& xi);

/// (f1 * f2)(g) = sum over integral h in Gamma_1 \ M2+(Z) of f1(g h^{-1}) f2(h).
/// pi is multiplicative on pairs where f2 is supported on integral matrices.
Kernel convolve(const Kernel& f1, const Kernel& f2);

/// (sigma_t f)(g) = det(g)^{it} f(g).
Kernel time_evolve(const Kernel& f, double t);
/// e^{itH} on coset states.
CosetState evolve_phases(const CosetState& xi, double t);

/// Largest amplitude error of e^{itH} pi(f) e^{-itH} xi against pi(sigma_t f) xi.
double evolve_conjugation_error(const Kernel& f, const CosetState& xi, double t);

/// Pseudorandom test data. `integral` keeps the kernel on integral double
/// cosets (r1 a positive integer).
Kernel random_kernel(std::uint64_t seed, int terms, long max_index, bool integral);
CosetState random_coset_state(std::uint64_t seed, int terms, long max_det);
VertexState random_vertex_state(std::uint64_t seed, int terms, long max_det);

/// Number of classes of determinant n: sigma_1(n) cosets or psi(n) vertices,
/// for every n <= x (index 0 unused).
std::vector<long> class_counts(long x, Mode mode);

/// Truncated trace of e^{-beta H}: sum over n <= X of count(n) n^{-beta}.
/// Throws DomainError("divergent range") unless beta > 2.
double partition_function(double beta, long x, Mode mode);

/// Gibbs average of an observable depending only on the determinant.
double gibbs_expectation(const std::function<double(long)>& obs_of_det, double beta, long x,
                         Mode mode);
/// Gibbs average of an observable on classes, enumerating every class of
/// determinant <= X by its row-Hermite representative.
double gibbs_expectation_classes(const std::function<double(const IntMat2&)>& obs, double beta,
                                 long x, Mode mode);

/// Sum of doubles in a fixed pairwise order.
double pairwise_sum(const std::vector<double>& terms);

nlohmann::ordered_json state_json(const VertexState& xi);
nlohmann::ordered_json state_json(const CosetState& xi);

}  // namespace bp
