#include "qmoduli/sections.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace qmoduli {

LineBundleCollection::LineBundleCollection(Fan f, std::vector<ToricDivisor> b)
    : fan(std::move(f)), bundles(std::move(b)) {
  for (const auto& d : bundles) {
    if (d.coefficients.size() != fan.rays().size()) {
      throw std::invalid_argument("collection divisor does not match the fan's ray count");
    }
  }
}

LineBundleCollection blowup_collection(int n, int m) {
  Fan f = blowup_fan(n, m);
  std::vector<ToricDivisor> bundles{divisor_class(f, 0, 0), divisor_class(f, 1, -1), divisor_class(f, 1, 0)};
  return LineBundleCollection(std::move(f), std::move(bundles));
}

LineBundleCollection projective_collection(int n, const std::vector<Int>& degrees) {
  Fan f = projective_space_fan(n);
  std::vector<ToricDivisor> bundles;
  for (Int d : degrees) {
    ToricDivisor div{IntVector(f.rays().size(), 0)};
    if (!div.coefficients.empty()) {
      div.coefficients.front() = d;
    } else if (d != 0) {
      throw std::invalid_argument("projective_collection: the point has only the trivial bundle");
    }
    bundles.push_back(std::move(div));
  }
  return LineBundleCollection(std::move(f), std::move(bundles));
}

namespace {

void check_vertex(const LineBundleCollection& c, std::size_t v) {
  if (v < 1 || v > c.size()) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " outside 1.." + std::to_string(c.size()));
  }
}

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += b[i];
  }
  return out;
}

}  // namespace

ToricDivisor arrow_divisor(const LineBundleCollection& c, std::size_t i, std::size_t j) {
  check_vertex(c, i);
  check_vertex(c, j);
  const std::size_t k = c.size();
  return c.bundles[k - i] - c.bundles[k - j];
}

std::vector<IntVector> irreducible_sections(const LineBundleCollection& c, std::size_t i, std::size_t j) {
  check_vertex(c, i);
  check_vertex(c, j);
  if (i >= j) {
    throw std::invalid_argument("irreducible_sections requires i < j");
  }
  std::set<IntVector> reducible;
  for (std::size_t l = 1; l <= c.size(); ++l) {
    if (l == i || l == j) {
      continue;
    }
    auto first = section_basis(c.fan, arrow_divisor(c, i, l));
    if (first.empty()) {
      continue;
    }
    auto second = section_basis(c.fan, arrow_divisor(c, l, j));
    for (const auto& u1 : first) {
      for (const auto& u2 : second) {
        reducible.insert(add(u1, u2));
      }
    }
  }
  std::vector<IntVector> out;
  for (auto& u : section_basis(c.fan, arrow_divisor(c, i, j))) {
    if (!reducible.count(u)) {
      out.push_back(std::move(u));
    }
  }
  return out;
}

SectionsQuiver quiver_of_sections(const LineBundleCollection& c) {
  const std::size_t k = c.size();
  if (k == 0) {
    throw std::invalid_argument("quiver_of_sections: empty collection");
  }
  for (std::size_t i = 2; i <= k; ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      if (!section_basis(c.fan, arrow_divisor(c, i, j)).empty()) {
        throw std::invalid_argument("collection is not ordered: vertex " + std::to_string(i) +
                                    " has sections to vertex " + std::to_string(j));
      }
    }
  }
  std::vector<Arrow> arrows;
  std::vector<IntVector> characters;
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = k; j > i; --j) {
      auto sections = irreducible_sections(c, i, j);
      for (std::size_t t = 0; t < sections.size(); ++t) {
        arrows.push_back({static_cast<int>(i), static_cast<int>(j),
                          "s" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(t)});
        characters.push_back(std::move(sections[t]));
      }
    }
  }
  std::vector<std::size_t> vertex_bundle;
  for (std::size_t v = 1; v <= k; ++v) {
    vertex_bundle.push_back(k - v);
  }
  return {Quiver(static_cast<int>(k), std::move(arrows)), std::move(characters), std::move(vertex_bundle)};
}

std::vector<PathRelation> bound_ideal(const SectionsQuiver& sq) {
  const Quiver& q = sq.quiver;
  if (sq.arrow_characters.size() != q.arrow_count()) {
    throw std::invalid_argument("bound_ideal: characters do not match the quiver");
  }
  if (validate(q).has(IssueKind::cycle)) {
    throw std::invalid_argument("bound_ideal requires an acyclic quiver");
  }
  using Key = std::tuple<int, int, IntVector>;
  std::map<Key, std::vector<std::vector<std::size_t>>> groups;
  std::vector<std::size_t> path;
  auto walk = [&](auto&& self, int start, int at, const IntVector& character) -> void {
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      if (q.arrow(a).source != at) {
        continue;
      }
      path.push_back(a);
      IntVector total = character.empty() ? sq.arrow_characters[a] : add(character, sq.arrow_characters[a]);
      groups[{start, q.arrow(a).target, total}].push_back(path);
      self(self, start, q.arrow(a).target, total);
      path.pop_back();
    }
  };
  for (int v = 1; v <= q.vertex_count(); ++v) {
    walk(walk, v, v, IntVector{});
  }
  std::vector<PathRelation> out;
  for (const auto& [key, paths] : groups) {
    for (std::size_t t = 1; t < paths.size(); ++t) {
      out.push_back({paths.front(), paths[t]});
    }
  }
  return out;
}

ExceptionalityReport is_strong_exceptional(const LineBundleCollection& c) {
  if (!is_smooth(c.fan) || !is_complete(c.fan)) {
    throw std::invalid_argument("is_strong_exceptional requires a smooth complete fan");
  }
  ExceptionalityReport report;
  auto zero = [](const std::vector<Integer>& h, std::size_t from) {
    return std::all_of(h.begin() + static_cast<std::ptrdiff_t>(from), h.end(),
                       [](const Integer& x) { return x == 0; });
  };
  for (std::size_t i = 1; i <= c.size(); ++i) {
    for (std::size_t j = i; j <= c.size(); ++j) {
      PairCohomology pair{i, j, cohomology(c.fan, c.bundles[j - 1] - c.bundles[i - 1]), {}, true};
      if (i == j) {
        pair.ok = pair.forward.front() == 1 && zero(pair.forward, 1);
      } else {
        pair.backward = cohomology(c.fan, c.bundles[i - 1] - c.bundles[j - 1]);
        pair.ok = zero(pair.forward, 1) && zero(pair.backward, 0);
      }
      report.ok = report.ok && pair.ok;
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

}  // namespace qmoduli
