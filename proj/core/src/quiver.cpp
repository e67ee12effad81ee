#include "qmoduli/quiver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qmoduli {

Quiver::Quiver(int vertex_count, std::vector<Arrow> arrows)
    : vertex_count_(vertex_count), arrows_(std::move(arrows)) {
  if (vertex_count_ < 1) {
    throw std::invalid_argument("quiver needs at least one vertex");
  }
  for (const auto& a : arrows_) {
    if (a.source < 1 || a.source > vertex_count_ || a.target < 1 || a.target > vertex_count_) {
      throw std::invalid_argument("arrow '" + a.name + "' has an endpoint outside 1.." +
                                  std::to_string(vertex_count_));
    }
  }
}

std::optional<std::size_t> Quiver::find_arrow(std::string_view name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t Quiver::multiplicity(int source, int target) const {
  return static_cast<std::size_t>(std::count_if(arrows_.begin(), arrows_.end(), [&](const Arrow& a) {
    return a.source == source && a.target == target;
  }));
}

bool same_up_to_relabeling(const Quiver& a, const Quiver& b) {
  if (a.vertex_count() != b.vertex_count() || a.arrow_count() != b.arrow_count()) {
    return false;
  }
  for (int i = 1; i <= a.vertex_count(); ++i) {
    for (int j = 1; j <= a.vertex_count(); ++j) {
      if (a.multiplicity(i, j) != b.multiplicity(i, j)) {
        return false;
      }
    }
  }
  return true;
}

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.kind == kind; });
}

std::string to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::cycle:
      return "cycle";
    case IssueKind::disconnected:
      return "disconnected";
    case IssueKind::no_unique_source:
      return "no_unique_source";
    case IssueKind::duplicate_name:
      return "duplicate_name";
  }
  return "unknown";
}

ValidationReport validate(const Quiver& q, SourceRequirement source) {
  ValidationReport report;
  const int n = q.vertex_count();

  // Kahn's algorithm: leftover vertices sit on a directed cycle.
  std::vector<int> indegree(n + 1, 0);
  std::vector<std::vector<int>> out(n + 1);
  for (const auto& a : q.arrows()) {
    ++indegree[a.target];
    out[a.source].push_back(a.target);
  }
  std::vector<int> remaining = indegree;
  std::vector<int> queue;
  for (int v = 1; v <= n; ++v) {
    if (remaining[v] == 0) {
      queue.push_back(v);
    }
  }
  std::size_t visited = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    ++visited;
    for (int w : out[v]) {
      if (--remaining[w] == 0) {
        queue.push_back(w);
      }
    }
  }
  if (visited != static_cast<std::size_t>(n)) {
    report.issues.push_back({IssueKind::cycle, "the quiver contains a directed cycle"});
  }

  // Union-find over the underlying undirected graph.
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& a : q.arrows()) {
    parent[find(a.source)] = find(a.target);
  }
  std::set<int> components;
  for (int v = 1; v <= n; ++v) {
    components.insert(find(v));
  }
  if (components.size() > 1) {
    report.issues.push_back({IssueKind::disconnected,
                             "the underlying graph has " + std::to_string(components.size()) +
                                 " connected components"});
  }

  std::vector<int> sources;
  for (int v = 1; v <= n; ++v) {
    if (indegree[v] == 0) {
      sources.push_back(v);
    }
  }
  if (sources.size() == 1) {
    report.unique_source = sources.front();
  }
  if (source == SourceRequirement::vertex_one && report.unique_source != 1) {
    report.issues.push_back(
        {IssueKind::no_unique_source, "vertex 1 is not the unique source (" +
                                          std::to_string(sources.size()) + " sources)"});
  }

  std::map<std::string, int> names;
  for (const auto& a : q.arrows()) {
    ++names[a.name];
  }
  for (const auto& [name, count] : names) {
    if (count > 1) {
      report.issues.push_back(
          {IssueKind::duplicate_name, "arrow name '" + name + "' used " + std::to_string(count) + " times"});
    }
  }
  return report;
}

Weight::Weight(std::vector<Integer> entries) : entries_(std::move(entries)) {
  Integer sum = 0;
  for (const auto& e : entries_) {
    sum += e;
  }
  if (sum != 0) {
    throw std::invalid_argument("weight entries must sum to zero (sum is " + sum.str() + ")");
  }
}

Weight Weight::of(std::initializer_list<long long> entries) {
  std::vector<Integer> v;
  for (long long e : entries) {
    v.emplace_back(e);
  }
  return Weight(std::move(v));
}

Weight Weight::scaled(const Integer& factor) const {
  std::vector<Integer> v = entries_;
  for (auto& e : v) {
    e *= factor;
  }
  return Weight(std::move(v));
}

bool Weight::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& e) { return e == 0; });
}

std::string to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    s += (i ? "," : "") + w[i].str();
  }
  return s + ")";
}

std::vector<Integer> toric_form(const Weight& w) {
  std::vector<Integer> out;
  Integer partial = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    partial -= w[i];
    out.push_back(partial);
  }
  return out;
}

Weight weight_from_toric_form(std::span<const Integer> toric) {
  std::vector<Integer> theta;
  theta.reserve(toric.size() + 1);
  Integer previous = 0;
  for (const auto& t : toric) {
    theta.push_back(previous - t);
    previous = t;
  }
  theta.push_back(previous);
  return Weight(std::move(theta));
}

bool is_admissible(const Weight& w) {
  auto t = toric_form(w);
  return std::all_of(t.begin(), t.end(), [](const Integer& x) { return x > 0; });
}

Quiver blowup_quiver(int n, int m) {
  BlowupLayout layout(n, m);
  std::vector<Arrow> arrows;
  for (int i = 0; i <= m; ++i) {
    arrows.push_back({1, 3, "x" + std::to_string(i)});
  }
  arrows.push_back({1, 2, "e"});
  for (int i = m + 1; i <= n; ++i) {
    arrows.push_back({2, 3, "x" + std::to_string(i)});
  }
  return Quiver(3, std::move(arrows));
}

Quiver kronecker_quiver(int n) {
  if (n < 2) {
    throw std::invalid_argument("kronecker quiver requires n >= 2 (got " + std::to_string(n) + ")");
  }
  std::vector<Arrow> arrows;
  for (int i = 0; i <= n; ++i) {
    arrows.push_back({1, 2, "x" + std::to_string(i)});
  }
  return Quiver(2, std::move(arrows));
}

BlowupLayout::BlowupLayout(int n_, int m_) : n(n_), m(m_) {
  if (n < 2) {
    throw std::invalid_argument("blowup quiver requires n >= 2 (got " + std::to_string(n) + ")");
  }
  if (m < 0 || m > n - 2) {
    throw std::invalid_argument("blowup quiver requires 0 <= m <= n - 2 (got n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");
  }
}

std::size_t BlowupLayout::x(int i) const {
  if (i < 0 || i > n) {
    throw std::out_of_range("x index out of range");
  }
  return i <= m ? static_cast<std::size_t>(i) : static_cast<std::size_t>(i) + 1;
}

}  // namespace qmoduli
