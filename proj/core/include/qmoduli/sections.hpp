#pragma once

// Quivers of sections of ordered line-bundle collections on toric
// varieties. Sections are torus characters, so multiplying sections is
// adding characters.
//
// Vertex convention: for a collection L_1..L_k, quiver vertex v carries the
// bundle L_{k+1-v} and arrows v -> w are irreducible sections of
// L_{k+1-v} - L_{k+1-w}. With {O, O(H-E), O(H)} this puts O(H) at the
// source, so the output is blowup_quiver(n, m) with its arrow order.

#include <cstddef>
#include <vector>

#include "qmoduli/numeric.hpp"
#include "qmoduli/quiver.hpp"
#include "qmoduli/toric.hpp"

namespace qmoduli {

struct LineBundleCollection {
  Fan fan;
  std::vector<ToricDivisor> bundles;

  /// Throws std::invalid_argument when a divisor does not match the fan.
  LineBundleCollection(Fan f, std::vector<ToricDivisor> b);
  std::size_t size() const { return bundles.size(); }
};

/// {O, O(H-E), O(H)} on blowup_fan(n, m).
LineBundleCollection blowup_collection(int n, int m);
/// {O(d) : d in degrees} on projective_space_fan(n), O(1) the divisor of ray 0.
LineBundleCollection projective_collection(int n, const std::vector<Int>& degrees);

/// Divisor whose sections label arrows from vertex i to vertex j.
ToricDivisor arrow_divisor(const LineBundleCollection& c, std::size_t i, std::size_t j);

/// Sections i -> j that are not sums of sections i -> l and l -> j for any
/// other vertex l. Requires 1 <= i < j <= k.
std::vector<IntVector> irreducible_sections(const LineBundleCollection& c, std::size_t i, std::size_t j);

struct SectionsQuiver {
  Quiver quiver;
  /// Character of each arrow, aligned with the quiver's arrow order.
  std::vector<IntVector> arrow_characters;
  /// 0-based collection index carried by each vertex (entry v-1).
  std::vector<std::size_t> vertex_bundle;
};

/// Arrows ordered by source ascending, then target descending, then
/// character. Throws std::invalid_argument when some difference bundle has
/// sections from a later vertex to an earlier one.
SectionsQuiver quiver_of_sections(const LineBundleCollection& c);

/// Two parallel paths with equal total character; each path is a list of
/// arrow indices.
struct PathRelation {
  std::vector<std::size_t> lhs;
  std::vector<std::size_t> rhs;
};

std::vector<PathRelation> bound_ideal(const SectionsQuiver& sq);

struct PairCohomology {
  /// 1-based collection indices, i <= j.
  std::size_t i;
  std::size_t j;
  /// h^*(L_j - L_i).
  std::vector<Integer> forward;
  /// h^*(L_i - L_j); empty when i == j.
  std::vector<Integer> backward;
  bool ok;
};

struct ExceptionalityReport {
  bool ok = true;
  std::vector<PairCohomology> pairs;
};

/// Throws std::invalid_argument unless the fan is smooth and complete.
ExceptionalityReport is_strong_exceptional(const LineBundleCollection& c);

}  // namespace qmoduli
