#pragma once

// Fans, reference fans for projective space and its blowup along a linear
// subspace, normal fans of lattice polytopes, unimodular fan isomorphism and
// cohomology of torus-invariant line bundles.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmoduli/linalg.hpp"
#include "qmoduli/numeric.hpp"
#include "qmoduli/polyhedron.hpp"

namespace qmoduli {

/// Marks a fan built by blowup_fan(n, m): rays 0..n are those of
/// projective_space_fan(n) and ray n+1 is the exceptional ray.
struct BlowupTag {
  int n;
  int m;

  bool operator==(const BlowupTag&) const = default;
};

using Cone = std::vector<std::size_t>;

class Fan {
 public:
  /// Rays must be nonzero primitive vectors of length `rank`; cone indices
  /// must be in range. Cones are stored sorted.
  Fan(std::size_t rank, std::vector<IntVector> rays, std::vector<Cone> cones,
      std::optional<BlowupTag> tag = std::nullopt);

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntVector& ray(std::size_t i) const { return rays_.at(i); }
  const std::vector<Cone>& cones() const { return cones_; }
  const std::optional<BlowupTag>& blowup_tag() const { return tag_; }

  std::optional<std::size_t> find_ray(const IntVector& v) const;
  /// Number of maximal cones containing ray i.
  std::size_t ray_degree(std::size_t i) const;

  /// Rays sorted lexicographically, cones re-indexed and sorted; the tag is
  /// dropped. Two fans are the same set of cones iff their canonical forms
  /// are equal.
  Fan canonical() const;
  bool same_as(const Fan& other) const;

  bool operator==(const Fan&) const = default;

 private:
  std::size_t rank_;
  std::vector<IntVector> rays_;
  std::vector<Cone> cones_;
  std::optional<BlowupTag> tag_;
};

/// Coefficients of a torus-invariant divisor, one per ray of the fan.
struct ToricDivisor {
  IntVector coefficients;

  bool operator==(const ToricDivisor&) const = default;
};

ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b);
ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b);
ToricDivisor operator-(const ToricDivisor& a);
ToricDivisor operator*(Int k, const ToricDivisor& a);

/// Rays v_0 = -(e_1+...+e_n), v_i = e_i; maximal cones are all n-subsets.
/// n = 0 gives the rank-0 fan of a point.
Fan projective_space_fan(int n);

/// Star subdivision of projective_space_fan(n) at v_E = v_{m+1}+...+v_n,
/// which is appended as ray n+1. Requires n >= 2 and 0 <= m <= n-2.
Fan blowup_fan(int n, int m);

/// Star subdivision of a simplicial fan at a primitive vector v lying in
/// the support of some cone; v becomes the last ray.
Fan star_subdivision(const Fan& f, const IntVector& v);

Fan product_fan(const Fan& a, const Fan& b);

/// Applies an invertible integer matrix to every ray.
Fan transform(const Fan& f, const IntMatrix& m);

bool is_smooth(const Fan& f);
/// Simplicial full-dimensional cones whose facets pair up across opposite
/// sides, plus coverage of a deterministic sample of lattice points.
bool is_complete(const Fan& f);

/// Result of normal_fan. `fan` is set only when the polytope has its
/// expected dimension.
struct NormalFan {
  std::optional<Fan> fan;
  bool degenerate = false;
  int dimension = -1;
  std::size_t expected_dimension = 0;
  /// Columns span the lattice of the affine hull (ker_Z of the equalities);
  /// fan rays are functionals in these coordinates.
  IntMatrix lattice_basis;
  RationalVector origin;
};

/// Throws std::invalid_argument on an empty polytope.
NormalFan normal_fan(const LatticePolytope& p);

struct FanIsomorphism {
  /// Unimodular; sends rays of the first fan to rays of the second.
  IntMatrix matrix;
  std::vector<std::size_t> ray_map;
};

/// Pins force ray i of `a` onto ray j of `b`. Throws std::invalid_argument
/// on a rank mismatch.
std::optional<FanIsomorphism> fans_isomorphic(const Fan& a, const Fan& b,
                                              const std::vector<std::pair<std::size_t, std::size_t>>& pins = {});

/// Lattice points u with <u, v_i> >= -a_i for every ray (lexicographic).
std::vector<IntVector> section_basis(const Fan& f, const ToricDivisor& d);

/// (h^0, ..., h^rank). Throws std::invalid_argument unless f is smooth and
/// complete.
std::vector<Integer> cohomology(const Fan& f, const ToricDivisor& d);

/// a H + b E on a fan from blowup_fan; H is the divisor of ray 0 and E that
/// of the exceptional ray. Throws std::invalid_argument for untagged fans.
ToricDivisor divisor_class(const Fan& f, Int a, Int b);
/// Every coefficient -1.
ToricDivisor canonical_divisor(const Fan& f);

struct BlowdownResult {
  bool ok = false;
  /// Index, in the finer fan, of the ray the blowdown removes.
  std::optional<std::size_t> contracted_ray;
  std::string reason;
};

/// True iff `finer` is the star subdivision of `coarser` at a single ray of
/// `finer` missing from `coarser`, with the identity lattice map. Throws on
/// a rank mismatch.
BlowdownResult is_star_subdivision_blowdown(const Fan& finer, const Fan& coarser);

}  // namespace qmoduli
