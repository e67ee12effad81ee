#pragma once

// Monomial semi-invariants of thin representations. A monomial in the arrow
// coordinates is semi-invariant of weight θ exactly when its divergence
// (inflow minus outflow of exponents at each vertex) equals θ, so B(rθ) has
// the lattice points of a flow polytope as a basis.

#include <cstddef>
#include <optional>
#include <vector>

#include "qmoduli/linalg.hpp"
#include "qmoduli/numeric.hpp"
#include "qmoduli/polyhedron.hpp"
#include "qmoduli/quiver.hpp"
#include "qmoduli/stability.hpp"

namespace qmoduli {

struct Monomial {
  IntVector exponents;

  Int total_degree() const;
  bool operator==(const Monomial&) const = default;
};

/// Graded-lex order: total degree ascending, then exponent vectors
/// lexicographically descending (x0 > x1 > ... in arrow order).
bool grlex_less(const Monomial& a, const Monomial& b);

Monomial operator*(const Monomial& a, const Monomial& b);

/// N x A incidence matrix: column a has +1 at t(a) and -1 at s(a).
IntMatrix divergence_matrix(const Quiver& q);

Weight monomial_weight(const Quiver& q, const Monomial& mo);

/// Basis of B(r w) in graded-lex order. Empty when infeasible.
std::vector<Monomial> semi_invariant_basis(const Quiver& q, const Weight& w, Int r);

/// dim B(r w) for r = 0..r_max.
std::vector<std::size_t> hilbert_function(const Quiver& q, const Weight& w, Int r_max);

/// Every monomial of B((r+1) w), 1 <= r < r_max, is a product of one from
/// B(w) and one from B(r w).
bool degree_one_generation(const Quiver& q, const Weight& w, Int r_max);

/// Smallest d in 1..max_degree with degree_one_generation(q, d w, r_max).
std::optional<Int> generation_degree(const Quiver& q, const Weight& w, Int r_max = 4,
                                     Int max_degree = 6);

/// A point of projective space, scaled so the first nonzero coordinate is 1.
class ProjectivePoint {
 public:
  /// nullopt when every coordinate is zero.
  static std::optional<ProjectivePoint> from(RationalVector coordinates);

  const RationalVector& coordinates() const { return coords_; }
  std::size_t size() const { return coords_.size(); }

  bool operator==(const ProjectivePoint&) const = default;

 private:
  explicit ProjectivePoint(RationalVector c) : coords_(std::move(c)) {}
  RationalVector coords_;
};

Rational evaluate(const Monomial& mo, const ThinRep& rep);

/// Image of rep under the linear system spanned by `basis`; nullopt when
/// every basis monomial vanishes on rep.
std::optional<ProjectivePoint> evaluate_point(const ThinRep& rep, const std::vector<Monomial>& basis);

/// {x >= 0, divergence(x) = w}.
struct FlowPolytope {
  Quiver quiver;
  Weight weight;
  std::vector<RationalVector> vertices;

  bool empty() const { return vertices.empty(); }
  /// Integer points found by bounding-box search over the vertex hull;
  /// independent of semi_invariant_basis.
  std::vector<IntVector> lattice_points() const;
  LatticePolytope as_lattice_polytope() const;
};

FlowPolytope flow_polytope(const Quiver& q, const Weight& w);

}  // namespace qmoduli
