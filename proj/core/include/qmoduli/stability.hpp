#pragma once

// θ-stability of thin representations (dimension vector (1,...,1)).
//
// For a thin representation a vertex subset S supports a subrepresentation
// iff no arrow with nonzero scalar leaves S, so everything here is decided
// by the zero pattern of the arrow scalars.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmoduli/numeric.hpp"
#include "qmoduli/quiver.hpp"

namespace qmoduli {

/// One exact scalar per arrow, in the quiver's arrow order.
struct ThinRep {
  RationalVector values;

  bool operator==(const ThinRep&) const = default;
};

/// Zero/nonzero flag per arrow. Bit i set means arrow i is nonzero.
class ZeroPattern {
 public:
  static constexpr std::size_t max_arrows = 64;

  ZeroPattern(std::size_t arrow_count, std::uint64_t nonzero_bits);
  static ZeroPattern all_zero(std::size_t arrow_count) { return {arrow_count, 0}; }
  static ZeroPattern all_nonzero(std::size_t arrow_count);
  /// Character i is '1' when arrow i is nonzero, '0' otherwise.
  static ZeroPattern parse(const std::string& bits);

  std::size_t size() const { return size_; }
  std::uint64_t bits() const { return bits_; }
  bool nonzero(std::size_t arrow) const { return (bits_ >> arrow) & 1U; }
  ZeroPattern with(std::size_t arrow, bool nonzero) const;
  std::string to_string() const;

  bool operator==(const ZeroPattern&) const = default;

 private:
  std::size_t size_;
  std::uint64_t bits_;
};

ZeroPattern pattern_of(const ThinRep& rep);

/// A set of 1-based vertices, stored as a bit mask (bit v-1 for vertex v).
class SupportSet {
 public:
  static constexpr int max_vertices = 63;

  SupportSet() = default;
  explicit SupportSet(std::uint64_t mask) : mask_(mask) {}
  static SupportSet of(std::initializer_list<int> vertices);

  std::uint64_t mask() const { return mask_; }
  bool contains(int vertex) const { return (mask_ >> (vertex - 1)) & 1U; }
  std::vector<int> vertices() const;
  std::size_t size() const;

  auto operator<=>(const SupportSet&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

std::string to_string(const SupportSet& s);

enum class Stability { stable, strictly_semistable, unstable };

std::string to_string(Stability s);
inline bool is_semistable(Stability s) { return s != Stability::unstable; }

/// Proper nonempty subrepresentation supports, ordered by mask.
std::vector<SupportSet> subrep_supports(const Quiver& q, const ZeroPattern& p);

/// Sum of θ_v over v in s.
Integer theta_value(const Weight& w, const SupportSet& s);

Stability semistability(const Quiver& q, const ZeroPattern& p, const Weight& w);

/// No proper nonempty vertex subset has zero θ-sum; then semistable implies
/// stable and the moduli space is fine.
bool fine_moduli_check(const Weight& w);

struct ClassifyOptions {
  std::size_t max_arrows = 20;
  /// Worker threads; the output order does not depend on it.
  unsigned jobs = 1;
};

/// Classification of every zero pattern. Entry k is the pattern whose bit i
/// is bit i of k (canonical arrow order).
struct PatternClassification {
  std::size_t arrow_count = 0;
  std::vector<Stability> classes;

  std::size_t count(Stability s) const;
  ZeroPattern pattern(std::size_t index) const { return {arrow_count, index}; }
};

/// Throws std::length_error when the arrow count exceeds options.max_arrows.
PatternClassification classify_patterns(const Quiver& q, const Weight& w,
                                        const ClassifyOptions& options = {});

enum class OracleCase {
  /// θ = (-p, p-q, q) with 0 < p < q.
  theta,
  /// θ' = (-p, 0, p).
  theta_prime,
};

/// Closed-form stability on blowup_quiver(n, m). For theta the closed form
/// decides stable vs unstable outright. For theta_prime the closed form only
/// decides semistability; a semistable verdict is refined into stable or
/// strictly semistable by the general definition at θ' = (-1, 0, 1).
Stability paper_stability_oracle(int n, int m, const ZeroPattern& p, OracleCase which);

/// The θ'-semistability criterion on its own: some x_i != 0 with i <= m,
/// or some x_i * e != 0 with i > m.
bool theta_prime_semistable(int n, int m, const ZeroPattern& p);

struct Wall {
  SupportSet subset;
  /// Indicator vector of the subset: the functional θ -> θ(S).
  std::vector<Integer> normal;
  /// Index into ChamberDecomposition::hyperplane_normals; S and its
  /// complement (and any other subset cutting the same hyperplane) share it.
  std::size_t hyperplane = 0;
  bool realizable = false;
  /// The generic weight on the wall used for the realizability test.
  Weight generic_point;
};

struct Chamber {
  Weight representative;
  /// Sign of each distinct hyperplane functional on the chamber.
  std::vector<int> signs;
};

struct ChamberDecomposition {
  int vertex_count = 0;
  std::vector<Wall> walls;
  /// Distinct hyperplanes, as primitive functionals on toric-form
  /// coordinates of the weight lattice.
  std::vector<IntVector> hyperplane_normals;
  std::vector<Chamber> chambers;

  /// Chamber containing w, or nullopt when w lies on some wall.
  std::optional<std::size_t> chamber_of(const Weight& w) const;
  /// Walls (by index) containing w.
  std::vector<std::size_t> walls_containing(const Weight& w) const;
};

/// Wall-and-chamber structure of the weight space. Requires at most 4
/// vertices (rank <= 3); throws std::length_error otherwise.
ChamberDecomposition chamber_decomposition(const Quiver& q, const ClassifyOptions& options = {});

}  // namespace qmoduli
