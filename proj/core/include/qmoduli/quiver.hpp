#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmoduli/numeric.hpp"

namespace qmoduli {

/// A labeled arrow between 1-based vertices.
struct Arrow {
  int source = 1;
  int target = 1;
  std::string name;

  bool operator==(const Arrow&) const = default;
};

/// Finite quiver with vertices 1..N and an ordered arrow list. The arrow
/// order is part of the value: exponent vectors, zero patterns and
/// representations are all indexed by it.
class Quiver {
 public:
  /// Throws std::invalid_argument when vertex_count < 1 or an arrow endpoint
  /// lies outside 1..vertex_count. Acyclicity, connectivity and name
  /// uniqueness are diagnosed by validate() instead.
  Quiver(int vertex_count, std::vector<Arrow> arrows);

  int vertex_count() const { return vertex_count_; }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
  std::optional<std::size_t> find_arrow(std::string_view name) const;

  /// Number of arrows i -> j.
  std::size_t multiplicity(int source, int target) const;

  bool operator==(const Quiver&) const = default;

 private:
  int vertex_count_;
  std::vector<Arrow> arrows_;
};

/// Same vertex count and the same number of arrows between every ordered
/// pair of vertices (names and arrow order ignored).
bool same_up_to_relabeling(const Quiver& a, const Quiver& b);

enum class IssueKind { cycle, disconnected, no_unique_source, duplicate_name };

struct ValidationIssue {
  IssueKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  /// The unique vertex without incoming arrows, when there is exactly one.
  std::optional<int> unique_source;

  bool ok() const { return issues.empty(); }
  bool has(IssueKind kind) const;
};

enum class SourceRequirement {
  none,
  /// Quivers of sections: vertex 1 must be the unique source.
  vertex_one,
};

ValidationReport validate(const Quiver& q, SourceRequirement source = SourceRequirement::none);

std::string to_string(IssueKind kind);

/// Stability parameter: an integer vector over the vertices summing to zero.
class Weight {
 public:
  /// Throws std::invalid_argument when the entries do not sum to zero.
  explicit Weight(std::vector<Integer> entries);
  static Weight of(std::initializer_list<long long> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<Integer>& entries() const { return entries_; }
  /// 0-based access (vertex v is entry v-1).
  const Integer& operator[](std::size_t i) const { return entries_.at(i); }

  Weight scaled(const Integer& factor) const;
  bool is_zero() const;

  bool operator==(const Weight&) const = default;

 private:
  std::vector<Integer> entries_;
};

std::string to_string(const Weight& w);

/// (-θ1, -θ1-θ2, ..., -θ1-...-θ_{N-1}).
std::vector<Integer> toric_form(const Weight& w);
/// Inverse of toric_form; any integer vector is a valid toric form.
Weight weight_from_toric_form(std::span<const Integer> toric);
/// Every toric-form entry is strictly positive.
bool is_admissible(const Weight& w);

/// Three vertices; arrows x_0..x_m : 1 -> 3, e : 1 -> 2, x_{m+1}..x_n : 2 -> 3,
/// in that order. Requires n >= 2 and 0 <= m <= n - 2.
Quiver blowup_quiver(int n, int m);
/// Two vertices and n + 1 arrows x_0..x_n : 1 -> 2. Requires n >= 2.
Quiver kronecker_quiver(int n);

/// Arrow positions inside blowup_quiver(n, m).
struct BlowupLayout {
  int n;
  int m;

  BlowupLayout(int n, int m);
  std::size_t arrow_count() const { return static_cast<std::size_t>(n) + 2; }
  std::size_t x(int i) const;
  std::size_t e() const { return static_cast<std::size_t>(m) + 1; }
};

}  // namespace qmoduli
