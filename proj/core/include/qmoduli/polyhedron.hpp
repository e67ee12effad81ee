#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qmoduli/linalg.hpp"
#include "qmoduli/numeric.hpp"

namespace qmoduli {

/// The closed halfspace <normal, x> >= bound.
struct Inequality {
  RationalVector normal;
  Rational bound;
};

/// Polyhedron {x in Q^dim : every inequality holds}, intended for the small
/// systems that show up in toric computations (a handful of constraints in
/// dimension at most about eight). Vertex and ray enumeration is done by
/// brute force over active sets.
class Polyhedron {
 public:
  Polyhedron(std::size_t dim, std::vector<Inequality> constraints);

  std::size_t dim() const { return dim_; }
  const std::vector<Inequality>& constraints() const { return constraints_; }

  bool contains(const RationalVector& x) const;
  bool contains(const IntVector& x) const;

  /// Some point of the polyhedron by Fourier–Motzkin elimination, preferring
  /// integral coordinates during back-substitution; nullopt when empty.
  std::optional<RationalVector> find_point() const;
  bool empty() const { return !find_point().has_value(); }

  /// True iff the recession cone is {0}. Empty polyhedra count as bounded.
  bool is_bounded() const;

  /// Vertices in lexicographic order. Requires a pointed polyhedron
  /// (constraint normals spanning Q^dim); otherwise returns no vertices.
  std::vector<RationalVector> vertices() const;

  /// Integer points in lexicographic order. Throws std::domain_error when
  /// the polyhedron is nonempty and unbounded.
  std::vector<IntVector> lattice_points() const;
  std::size_t count_lattice_points() const;

 private:
  std::size_t dim_;
  std::vector<Inequality> constraints_;
};

/// Vertices of {x >= 0, A x = b} (basic feasible solutions), sorted and
/// deduplicated. Exact rational pivoting over every column basis.
std::vector<RationalVector> standard_form_vertices(const IntMatrix& a, const IntVector& b);

/// A polytope given by its vertices inside the affine space {A x = b}. The
/// lattice of the affine hull is ker_Z(A); this is the input format the
/// normal-fan construction consumes.
struct LatticePolytope {
  IntMatrix equalities;
  IntVector rhs;
  std::vector<RationalVector> vertices;

  std::size_t ambient_dim() const { return equalities.cols(); }
  /// ambient_dim - rank(equalities).
  std::size_t expected_dimension() const;
  /// Affine dimension of the vertex set (-1 for an empty polytope).
  int dimension() const;
};

}  // namespace qmoduli
