#include "qmoduli/stability.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <thread>

#include "qmoduli/polyhedron.hpp"

namespace qmoduli {

ZeroPattern::ZeroPattern(std::size_t arrow_count, std::uint64_t nonzero_bits)
    : size_(arrow_count), bits_(nonzero_bits) {
  if (size_ > max_arrows) {
    throw std::length_error("zero patterns support at most 64 arrows");
  }
  if (size_ < max_arrows && (bits_ >> size_) != 0) {
    throw std::invalid_argument("zero pattern has bits beyond its arrow count");
  }
}

ZeroPattern ZeroPattern::all_nonzero(std::size_t arrow_count) {
  std::uint64_t bits = arrow_count == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << arrow_count) - 1);
  return {arrow_count, bits};
}

ZeroPattern ZeroPattern::parse(const std::string& bits) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      throw std::invalid_argument("zero pattern strings use only '0' and '1'");
    }
  }
  return {bits.size(), mask};
}

ZeroPattern ZeroPattern::with(std::size_t arrow, bool nonzero) const {
  std::uint64_t b = bits_ & ~(std::uint64_t{1} << arrow);
  if (nonzero) {
    b |= std::uint64_t{1} << arrow;
  }
  return {size_, b};
}

std::string ZeroPattern::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (nonzero(i)) {
      s[i] = '1';
    }
  }
  return s;
}

ZeroPattern pattern_of(const ThinRep& rep) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < rep.values.size(); ++i) {
    if (rep.values[i] != 0) {
      bits |= std::uint64_t{1} << i;
    }
  }
  return {rep.values.size(), bits};
}

SupportSet SupportSet::of(std::initializer_list<int> vertices) {
  std::uint64_t m = 0;
  for (int v : vertices) {
    m |= std::uint64_t{1} << (v - 1);
  }
  return SupportSet(m);
}

std::vector<int> SupportSet::vertices() const {
  std::vector<int> out;
  for (int v = 1; v <= max_vertices; ++v) {
    if (contains(v)) {
      out.push_back(v);
    }
  }
  return out;
}

std::size_t SupportSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::string to_string(const SupportSet& s) {
  std::string out = "{";
  bool first = true;
  for (int v : s.vertices()) {
    out += (first ? "" : ",") + std::to_string(v);
    first = false;
  }
  return out + "}";
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::strictly_semistable:
      return "strictly-semistable";
    case Stability::unstable:
      return "unstable";
  }
  return "unknown";
}

namespace {

void check_sizes(const Quiver& q, const ZeroPattern& p) {
  if (p.size() != q.arrow_count()) {
    throw std::invalid_argument("zero pattern has " + std::to_string(p.size()) +
                                " entries but the quiver has " + std::to_string(q.arrow_count()) +
                                " arrows");
  }
  if (q.vertex_count() > SupportSet::max_vertices) {
    throw std::length_error("stability supports at most 63 vertices");
  }
}

void check_sizes(const Quiver& q, const Weight& w) {
  if (w.size() != static_cast<std::size_t>(q.vertex_count())) {
    throw std::invalid_argument("weight has " + std::to_string(w.size()) +
                                " entries but the quiver has " + std::to_string(q.vertex_count()) +
                                " vertices");
  }
}

// Arrow endpoints as masks, nonzero arrows only.
struct ArrowMasks {
  std::vector<std::uint64_t> source, target;
};

ArrowMasks nonzero_arrow_masks(const Quiver& q, const ZeroPattern& p) {
  ArrowMasks m;
  for (std::size_t i = 0; i < q.arrow_count(); ++i) {
    if (p.nonzero(i)) {
      m.source.push_back(std::uint64_t{1} << (q.arrow(i).source - 1));
      m.target.push_back(std::uint64_t{1} << (q.arrow(i).target - 1));
    }
  }
  return m;
}

bool closed_under(const ArrowMasks& m, std::uint64_t s) {
  for (std::size_t i = 0; i < m.source.size(); ++i) {
    if ((s & m.source[i]) && !(s & m.target[i])) {
      return false;
    }
  }
  return true;
}

// θ-sums of every vertex subset, indexed by mask.
std::vector<Integer> subset_sums(const Weight& w) {
  const std::size_t n = w.size();
  std::vector<Integer> sums(std::size_t{1} << n);
  for (std::uint64_t s = 1; s < sums.size(); ++s) {
    int low = std::countr_zero(s);
    sums[s] = sums[s & (s - 1)] + w[static_cast<std::size_t>(low)];
  }
  return sums;
}

Stability classify_with_sums(const Quiver& q, const ZeroPattern& p, const std::vector<Integer>& sums) {
  const std::uint64_t full = (std::uint64_t{1} << q.vertex_count()) - 1;
  auto masks = nonzero_arrow_masks(q, p);
  bool strict = true;
  for (std::uint64_t s = 1; s < full; ++s) {
    if (!closed_under(masks, s)) {
      continue;
    }
    const Integer& v = sums[s];
    if (v < 0) {
      return Stability::unstable;
    }
    if (v == 0) {
      strict = false;
    }
  }
  return strict ? Stability::stable : Stability::strictly_semistable;
}

}  // namespace

std::vector<SupportSet> subrep_supports(const Quiver& q, const ZeroPattern& p) {
  check_sizes(q, p);
  const std::uint64_t full = (std::uint64_t{1} << q.vertex_count()) - 1;
  auto masks = nonzero_arrow_masks(q, p);
  std::vector<SupportSet> out;
  for (std::uint64_t s = 1; s < full; ++s) {
    if (closed_under(masks, s)) {
      out.emplace_back(s);
    }
  }
  return out;
}

Integer theta_value(const Weight& w, const SupportSet& s) {
  Integer total = 0;
  for (int v : s.vertices()) {
    if (static_cast<std::size_t>(v) > w.size()) {
      throw std::out_of_range("support vertex " + std::to_string(v) + " outside the weight");
    }
    total += w[static_cast<std::size_t>(v - 1)];
  }
  return total;
}

Stability semistability(const Quiver& q, const ZeroPattern& p, const Weight& w) {
  check_sizes(q, p);
  check_sizes(q, w);
  bool strict = true;
  for (const auto& s : subrep_supports(q, p)) {
    Integer v = theta_value(w, s);
    if (v < 0) {
      return Stability::unstable;
    }
    if (v == 0) {
      strict = false;
    }
  }
  return strict ? Stability::stable : Stability::strictly_semistable;
}

bool fine_moduli_check(const Weight& w) {
  if (w.size() > static_cast<std::size_t>(SupportSet::max_vertices)) {
    throw std::length_error("fine_moduli_check supports at most 63 vertices");
  }
  auto sums = subset_sums(w);
  const std::uint64_t full = (std::uint64_t{1} << w.size()) - 1;
  for (std::uint64_t s = 1; s < full; ++s) {
    if (sums[s] == 0) {
      return false;
    }
  }
  return true;
}

std::size_t PatternClassification::count(Stability s) const {
  return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), s));
}

PatternClassification classify_patterns(const Quiver& q, const Weight& w, const ClassifyOptions& options) {
  check_sizes(q, w);
  if (q.arrow_count() > options.max_arrows || q.arrow_count() >= 63) {
    throw std::length_error("classify_patterns: " + std::to_string(q.arrow_count()) +
                            " arrows exceeds the enumeration bound of " +
                            std::to_string(options.max_arrows));
  }
  if (q.vertex_count() > 24) {
    throw std::length_error("classify_patterns: too many vertices for subset enumeration");
  }
  PatternClassification result;
  result.arrow_count = q.arrow_count();
  const std::size_t total = std::size_t{1} << q.arrow_count();
  result.classes.resize(total);
  const auto sums = subset_sums(w);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      result.classes[k] = classify_with_sums(q, ZeroPattern(q.arrow_count(), k), sums);
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, 64));
  if (jobs == 1 || total < 1024) {
    work(0, total);
    return result;
  }
  std::vector<std::thread> threads;
  const std::size_t chunk = (total + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    std::size_t begin = j * chunk;
    std::size_t end = std::min(total, begin + chunk);
    if (begin < end) {
      threads.emplace_back(work, begin, end);
    }
  }
  for (auto& t : threads) {
    t.join();
  }
  return result;
}

bool theta_prime_semistable(int n, int m, const ZeroPattern& p) {
  BlowupLayout layout(n, m);
  if (p.size() != layout.arrow_count()) {
    throw std::invalid_argument("zero pattern does not match blowup_quiver(n, m)");
  }
  for (int i = 0; i <= m; ++i) {
    if (p.nonzero(layout.x(i))) {
      return true;
    }
  }
  if (!p.nonzero(layout.e())) {
    return false;
  }
  for (int i = m + 1; i <= n; ++i) {
    if (p.nonzero(layout.x(i))) {
      return true;
    }
  }
  return false;
}

Stability paper_stability_oracle(int n, int m, const ZeroPattern& p, OracleCase which) {
  BlowupLayout layout(n, m);
  if (p.size() != layout.arrow_count()) {
    throw std::invalid_argument("zero pattern does not match blowup_quiver(n, m)");
  }
  if (which == OracleCase::theta_prime) {
    if (!theta_prime_semistable(n, m, p)) {
      return Stability::unstable;
    }
    return semistability(blowup_quiver(n, m), p, Weight::of({-1, 0, 1}));
  }
  bool some_early = false, some_late = false;
  for (int i = 0; i <= m; ++i) {
    some_early = some_early || p.nonzero(layout.x(i));
  }
  for (int i = m + 1; i <= n; ++i) {
    some_late = some_late || p.nonzero(layout.x(i));
  }
  bool stable = p.nonzero(layout.e()) ? some_late : (some_early && some_late);
  return stable ? Stability::stable : Stability::unstable;
}

namespace {

IntVector sign_normalized(IntVector v) {
  v = make_primitive(std::move(v));
  for (Int x : v) {
    if (x != 0) {
      if (x < 0) {
        for (Int& y : v) {
          y = -y;
        }
      }
      break;
    }
  }
  return v;
}

Int evaluate(const IntVector& functional, const IntVector& toric) { return dot(functional, toric); }

}  // namespace

std::optional<std::size_t> ChamberDecomposition::chamber_of(const Weight& w) const {
  auto t = toric_form(w);
  IntVector toric;
  for (const auto& x : t) {
    toric.push_back(to_int(x));
  }
  std::vector<int> signs;
  for (const auto& h : hyperplane_normals) {
    Int v = evaluate(h, toric);
    if (v == 0) {
      return std::nullopt;
    }
    signs.push_back(v > 0 ? 1 : -1);
  }
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    if (chambers[i].signs == signs) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> ChamberDecomposition::walls_containing(const Weight& w) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    if (theta_value(w, walls[i].subset) == 0) {
      out.push_back(i);
    }
  }
  return out;
}

ChamberDecomposition chamber_decomposition(const Quiver& q, const ClassifyOptions& options) {
  const int n = q.vertex_count();
  if (n > 4) {
    throw std::length_error("chamber_decomposition supports at most 4 vertices");
  }
  if (q.arrow_count() > options.max_arrows) {
    throw std::length_error("chamber_decomposition: arrow count exceeds the enumeration bound");
  }
  const std::size_t d = static_cast<std::size_t>(n - 1);
  ChamberDecomposition out;
  out.vertex_count = n;

  // θ(S) as a functional on toric coordinates: its value on each unit vector.
  std::vector<Weight> unit_weights;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Integer> t(d, 0);
    t[k] = 1;
    unit_weights.push_back(weight_from_toric_form(t));
  }
  auto functional_of = [&](const SupportSet& s) {
    IntVector c(d);
    for (std::size_t k = 0; k < d; ++k) {
      c[k] = to_int(theta_value(unit_weights[k], s));
    }
    return c;
  };

  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::map<IntVector, std::size_t> hyperplane_index;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    SupportSet s(mask);
    IntVector h = sign_normalized(functional_of(s));
    auto [it, inserted] = hyperplane_index.emplace(h, out.hyperplane_normals.size());
    if (inserted) {
      out.hyperplane_normals.push_back(h);
    }
    std::vector<Integer> indicator(static_cast<std::size_t>(n), 0);
    for (int v : s.vertices()) {
      indicator[static_cast<std::size_t>(v - 1)] = 1;
    }
    out.walls.push_back({s, std::move(indicator), it->second, false, Weight(std::vector<Integer>(n, 0))});
  }

  // Generic point of each hyperplane: on it, off every other hyperplane.
  std::vector<IntVector> generic(out.hyperplane_normals.size());
  for (std::size_t h = 0; h < out.hyperplane_normals.size(); ++h) {
    bool found = false;
    for (Int bound = 0; bound <= 64 && !found; ++bound) {
      IntVector t(d, -bound);
      while (true) {
        bool on_this = evaluate(out.hyperplane_normals[h], t) == 0;
        bool off_others = true;
        for (std::size_t g = 0; g < out.hyperplane_normals.size() && on_this; ++g) {
          if (g != h && evaluate(out.hyperplane_normals[g], t) == 0) {
            off_others = false;
            break;
          }
        }
        if (on_this && off_others) {
          generic[h] = t;
          found = true;
          break;
        }
        std::size_t k = 0;
        while (k < d && t[k] == bound) {
          t[k] = -bound;
          ++k;
        }
        if (k == d) {
          break;
        }
        ++t[k];
      }
    }
    if (!found) {
      throw std::logic_error("chamber_decomposition: no generic point found on a wall");
    }
  }

  for (auto& wall : out.walls) {
    std::vector<Integer> t(generic[wall.hyperplane].begin(), generic[wall.hyperplane].end());
    wall.generic_point = weight_from_toric_form(t);
    const std::size_t total = std::size_t{1} << q.arrow_count();
    for (std::size_t k = 0; k < total && !wall.realizable; ++k) {
      ZeroPattern p(q.arrow_count(), k);
      auto masks = nonzero_arrow_masks(q, p);
      if (!closed_under(masks, wall.subset.mask())) {
        continue;
      }
      wall.realizable = is_semistable(semistability(q, p, wall.generic_point));
    }
  }

  // Chambers: sign vectors whose open cone is nonempty, found incrementally.
  struct Partial {
    std::vector<int> signs;
    std::vector<Inequality> constraints;
  };
  std::vector<Partial> partial{{}};
  for (const auto& h : out.hyperplane_normals) {
    std::vector<Partial> next;
    for (const auto& c : partial) {
      for (int sign : {1, -1}) {
        Partial extended = c;
        RationalVector normal;
        for (Int x : h) {
          normal.emplace_back(sign * x);
        }
        extended.constraints.push_back({normal, Rational(1)});
        extended.signs.push_back(sign);
        if (Polyhedron(d, extended.constraints).find_point()) {
          next.push_back(std::move(extended));
        }
      }
    }
    partial = std::move(next);
  }
  for (const auto& c : partial) {
    auto point = Polyhedron(d, c.constraints).find_point();
    // Integral and strictly inside the open cone, so every sign survives.
    IntVector t = d == 0 ? IntVector{} : primitive_integer_multiple(*point);
    std::vector<Integer> toric(t.begin(), t.end());
    out.chambers.push_back({weight_from_toric_form(toric), c.signs});
  }
  return out;
}

}  // namespace qmoduli
