#include "qmoduli/toric.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

#include "combinations.hpp"

namespace qmoduli {

Fan::Fan(std::size_t rank, std::vector<IntVector> rays, std::vector<Cone> cones, std::optional<BlowupTag> tag)
    : rank_(rank), rays_(std::move(rays)), cones_(std::move(cones)), tag_(tag) {
  for (const auto& r : rays_) {
    if (r.size() != rank_) {
      throw std::invalid_argument("fan ray has length " + std::to_string(r.size()) + ", expected " +
                                  std::to_string(rank_));
    }
    if (gcd(r) != 1) {
      throw std::invalid_argument("fan rays must be nonzero and primitive");
    }
  }
  for (auto& c : cones_) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
      throw std::invalid_argument("cone lists a ray twice");
    }
    for (auto i : c) {
      if (i >= rays_.size()) {
        throw std::invalid_argument("cone references ray " + std::to_string(i) + " of " +
                                    std::to_string(rays_.size()));
      }
    }
  }
  std::sort(cones_.begin(), cones_.end());
}

std::optional<std::size_t> Fan::find_ray(const IntVector& v) const {
  auto it = std::find(rays_.begin(), rays_.end(), v);
  if (it == rays_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - rays_.begin());
}

std::size_t Fan::ray_degree(std::size_t i) const {
  return static_cast<std::size_t>(std::count_if(cones_.begin(), cones_.end(), [&](const Cone& c) {
    return std::binary_search(c.begin(), c.end(), i);
  }));
}

Fan Fan::canonical() const {
  std::vector<std::size_t> order(rays_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rays_[a] < rays_[b]; });
  std::vector<std::size_t> position(rays_.size());
  std::vector<IntVector> rays;
  for (std::size_t k = 0; k < order.size(); ++k) {
    position[order[k]] = k;
    rays.push_back(rays_[order[k]]);
  }
  std::vector<Cone> cones;
  for (const auto& c : cones_) {
    Cone mapped;
    for (auto i : c) {
      mapped.push_back(position[i]);
    }
    cones.push_back(std::move(mapped));
  }
  return Fan(rank_, std::move(rays), std::move(cones));
}

bool Fan::same_as(const Fan& other) const {
  return rank_ == other.rank_ && canonical() == other.canonical();
}

ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b) {
  if (a.coefficients.size() != b.coefficients.size()) {
    throw std::invalid_argument("divisor sum: size mismatch");
  }
  ToricDivisor out = a;
  for (std::size_t i = 0; i < out.coefficients.size(); ++i) {
    out.coefficients[i] += b.coefficients[i];
  }
  return out;
}

ToricDivisor operator-(const ToricDivisor& a) { return -1 * a; }

ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b) { return a + (-b); }

ToricDivisor operator*(Int k, const ToricDivisor& a) {
  ToricDivisor out = a;
  for (auto& c : out.coefficients) {
    c *= k;
  }
  return out;
}

Fan projective_space_fan(int n) {
  if (n < 0) {
    throw std::invalid_argument("projective_space_fan requires n >= 0");
  }
  const auto d = static_cast<std::size_t>(n);
  std::vector<IntVector> rays;
  if (n == 0) {
    return Fan(0, {}, {Cone{}});
  }
  rays.emplace_back(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, 0);
    e[i] = 1;
    rays.push_back(std::move(e));
  }
  std::vector<Cone> cones;
  for (std::size_t skip = 0; skip <= d; ++skip) {
    Cone c;
    for (std::size_t i = 0; i <= d; ++i) {
      if (i != skip) {
        c.push_back(i);
      }
    }
    cones.push_back(std::move(c));
  }
  return Fan(d, std::move(rays), std::move(cones));
}

Fan blowup_fan(int n, int m) {
  if (n < 2) {
    throw std::invalid_argument("blowup_fan requires n >= 2 (got " + std::to_string(n) + ")");
  }
  if (m < 0 || m > n - 2) {
    throw std::invalid_argument("blowup_fan requires 0 <= m <= n - 2 (got n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");
  }
  const Fan base = projective_space_fan(n);
  std::vector<IntVector> rays = base.rays();
  IntVector exceptional(static_cast<std::size_t>(n), 0);
  for (int i = m + 1; i <= n; ++i) {
    exceptional[static_cast<std::size_t>(i - 1)] = 1;
  }
  rays.push_back(exceptional);
  const auto e = static_cast<std::size_t>(n) + 1;

  // Maximal cones of P^n omit one ray j. Those with j <= m contain the
  // centre cone {m+1..n} and are split; the rest survive unchanged.
  std::vector<Cone> cones;
  for (int j = 0; j <= n; ++j) {
    Cone full;
    for (int i = 0; i <= n; ++i) {
      if (i != j) {
        full.push_back(static_cast<std::size_t>(i));
      }
    }
    if (j > m) {
      cones.push_back(full);
      continue;
    }
    for (int k = m + 1; k <= n; ++k) {
      Cone c;
      for (auto i : full) {
        if (i != static_cast<std::size_t>(k)) {
          c.push_back(i);
        }
      }
      c.push_back(e);
      cones.push_back(std::move(c));
    }
  }
  return Fan(static_cast<std::size_t>(n), std::move(rays), std::move(cones), BlowupTag{n, m});
}

namespace {

RationalMatrix ray_columns(const Fan& f, const Cone& c) {
  RationalMatrix m(f.rank(), c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t i = 0; i < f.rank(); ++i) {
      m(i, j) = f.ray(c[j])[i];
    }
  }
  return m;
}

IntMatrix ray_rows(const Fan& f, const Cone& c) {
  IntMatrix m(c.size(), f.rank());
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t i = 0; i < f.rank(); ++i) {
      m(j, i) = f.ray(c[j])[i];
    }
  }
  return m;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols() || rank(m) != n) {
    return std::nullopt;
  }
  RationalMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    RationalVector e(n, Rational(0));
    e[c] = 1;
    auto x = solve(m, e);
    for (std::size_t r = 0; r < n; ++r) {
      inv(r, c) = (*x)[r];
    }
  }
  return inv;
}

// Coefficients of v in the rays of a simplicial cone, when v lies in its span.
std::optional<RationalVector> cone_coordinates(const Fan& f, const Cone& c, const IntVector& v) {
  auto m = ray_columns(f, c);
  if (rank(m) != c.size()) {
    return std::nullopt;
  }
  return solve(m, to_rational(v));
}

}  // namespace

Fan star_subdivision(const Fan& f, const IntVector& v) {
  if (v.size() != f.rank() || gcd(v) != 1) {
    throw std::invalid_argument("star_subdivision: v must be a primitive vector of the fan's rank");
  }
  std::optional<Cone> tau;
  for (const auto& c : f.cones()) {
    auto lambda = cone_coordinates(f, c, v);
    if (!lambda || std::any_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x < 0; })) {
      continue;
    }
    Cone support;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if ((*lambda)[j] > 0) {
        support.push_back(c[j]);
      }
    }
    tau = support;
    break;
  }
  if (!tau) {
    throw std::invalid_argument("star_subdivision: v lies outside the support of the fan");
  }
  if (tau->size() < 2) {
    throw std::invalid_argument("star_subdivision: v is already a ray");
  }
  std::vector<IntVector> rays = f.rays();
  rays.push_back(v);
  const std::size_t added = rays.size() - 1;
  std::vector<Cone> cones;
  for (const auto& c : f.cones()) {
    if (!std::includes(c.begin(), c.end(), tau->begin(), tau->end())) {
      cones.push_back(c);
      continue;
    }
    for (auto rho : *tau) {
      Cone split;
      for (auto i : c) {
        if (i != rho) {
          split.push_back(i);
        }
      }
      split.push_back(added);
      cones.push_back(std::move(split));
    }
  }
  return Fan(f.rank(), std::move(rays), std::move(cones));
}

Fan product_fan(const Fan& a, const Fan& b) {
  const std::size_t rank = a.rank() + b.rank();
  std::vector<IntVector> rays;
  for (const auto& r : a.rays()) {
    IntVector v(rank, 0);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(std::move(v));
  }
  for (const auto& r : b.rays()) {
    IntVector v(rank, 0);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(a.rank()));
    rays.push_back(std::move(v));
  }
  std::vector<Cone> cones;
  for (const auto& ca : a.cones()) {
    for (const auto& cb : b.cones()) {
      Cone c = ca;
      for (auto i : cb) {
        c.push_back(i + a.rays().size());
      }
      cones.push_back(std::move(c));
    }
  }
  return Fan(rank, std::move(rays), std::move(cones));
}

Fan transform(const Fan& f, const IntMatrix& m) {
  if (m.rows() != f.rank() || m.cols() != f.rank()) {
    throw std::invalid_argument("transform: matrix size does not match the fan rank");
  }
  Integer det = determinant(m);
  if (det != 1 && det != -1) {
    throw std::invalid_argument("transform: matrix is not unimodular");
  }
  std::vector<IntVector> rays;
  for (const auto& r : f.rays()) {
    rays.push_back(m.apply(r));
  }
  return Fan(f.rank(), std::move(rays), f.cones());
}

bool is_smooth(const Fan& f) {
  for (const auto& c : f.cones()) {
    if (c.size() > f.rank()) {
      return false;
    }
    if (c.empty()) {
      continue;
    }
    if (maximal_minor_gcd(ray_rows(f, c)) != 1) {
      return false;
    }
  }
  return true;
}

bool is_complete(const Fan& f) {
  const std::size_t d = f.rank();
  if (d == 0) {
    return f.cones().size() == 1;
  }
  std::vector<RationalMatrix> inverses;
  for (const auto& c : f.cones()) {
    if (c.size() != d) {
      return false;
    }
    auto inv = inverse(ray_columns(f, c));
    if (!inv) {
      return false;
    }
    inverses.push_back(std::move(*inv));
  }

  // Each facet must bound exactly two maximal cones lying on opposite sides.
  std::map<Cone, std::vector<int>> sides;
  for (const auto& c : f.cones()) {
    for (std::size_t skip = 0; skip < d; ++skip) {
      Cone facet;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != skip) {
          facet.push_back(c[j]);
        }
      }
      auto normal = kernel(ray_columns(f, facet).transpose());
      if (normal.size() != 1) {
        return false;
      }
      Rational side = dot(normal.front(), to_rational(f.ray(c[skip])));
      sides[facet].push_back(side > 0 ? 1 : -1);
    }
  }
  for (const auto& [facet, s] : sides) {
    if (s.size() != 2 || s[0] == s[1]) {
      return false;
    }
  }

  const Int radius = d <= 4 ? 2 : 1;
  IntVector u(d, -radius);
  while (true) {
    RationalVector ur = to_rational(u);
    bool covered = false;
    for (const auto& inv : inverses) {
      auto lambda = inv.apply(ur);
      if (std::all_of(lambda.begin(), lambda.end(), [](const Rational& x) { return x >= 0; })) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      return false;
    }
    std::size_t k = 0;
    while (k < d && u[k] == radius) {
      u[k] = -radius;
      ++k;
    }
    if (k == d) {
      break;
    }
    ++u[k];
  }
  return true;
}

NormalFan normal_fan(const LatticePolytope& p) {
  if (p.vertices.empty()) {
    throw std::invalid_argument("normal_fan: the polytope is empty");
  }
  NormalFan out;
  out.lattice_basis = integer_kernel(p.equalities);
  out.expected_dimension = out.lattice_basis.cols();
  out.dimension = p.dimension();
  out.origin = p.vertices.front();
  const std::size_t k = out.expected_dimension;
  if (out.dimension < static_cast<int>(k)) {
    out.degenerate = true;
    return out;
  }
  if (k == 0) {
    out.fan = Fan(0, {}, {Cone{}});
    return out;
  }

  // Vertex coordinates in the lattice basis.
  const RationalMatrix basis = to_rational(out.lattice_basis);
  std::vector<RationalVector> coords;
  for (const auto& v : p.vertices) {
    RationalVector diff(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      diff[i] = v[i] - out.origin[i];
    }
    auto y = solve(basis, diff);
    if (!y) {
      throw std::invalid_argument("normal_fan: vertex outside the affine hull of the equalities");
    }
    coords.push_back(std::move(*y));
  }

  // Facet normals from affinely independent k-subsets of vertices.
  std::set<IntVector> normals;
  detail::for_each_combination(coords.size(), k, [&](const std::vector<std::size_t>& pick) {
    RationalMatrix diffs(k - 1, k);
    for (std::size_t r = 1; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        diffs(r - 1, c) = coords[pick[r]][c] - coords[pick[0]][c];
      }
    }
    auto ker = kernel(diffs);
    if (ker.size() != 1) {
      return true;
    }
    const Rational level = dot(ker.front(), coords[pick[0]]);
    bool above = true, below = true;
    for (const auto& y : coords) {
      Rational value = dot(ker.front(), y);
      above = above && value >= level;
      below = below && value <= level;
    }
    if (above == below) {
      return true;
    }
    IntVector a = primitive_integer_multiple(ker.front());
    if (below) {
      for (auto& x : a) {
        x = -x;
      }
    }
    normals.insert(std::move(a));
    return true;
  });

  std::vector<IntVector> rays(normals.begin(), normals.end());
  std::vector<Cone> cones;
  for (const auto& y : coords) {
    Cone c;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      Rational value = dot(to_rational(rays[r]), y);
      bool minimal = std::all_of(coords.begin(), coords.end(), [&](const RationalVector& z) {
        return dot(to_rational(rays[r]), z) >= value;
      });
      if (minimal) {
        c.push_back(r);
      }
    }
    cones.push_back(std::move(c));
  }
  out.fan = Fan(k, std::move(rays), std::move(cones));
  return out;
}

namespace {

class IsomorphismSearch {
 public:
  IsomorphismSearch(const Fan& a, const Fan& b, const std::vector<std::pair<std::size_t, std::size_t>>& pins)
      : a_(a), b_(b), pins_(pins), b_cones_(b.cones().begin(), b.cones().end()) {
    for (std::size_t i = 0; i < b.rays().size(); ++i) {
      b_index_[b.ray(i)] = i;
    }
  }

  std::optional<FanIsomorphism> run() {
    const std::size_t d = a_.rank();
    // A full-dimensional simplicial cone of `a` must land on one of `b`.
    for (const auto& c : a_.cones()) {
      if (c.size() == d && rank(ray_columns(a_, c)) == d) {
        set_basis(c);
        for (const auto& target : b_.cones()) {
          if (target.size() != d) {
            continue;
          }
          Cone images = target;
          do {
            if (auto found = attempt(images)) {
              return found;
            }
          } while (std::next_permutation(images.begin(), images.end()));
        }
        return std::nullopt;
      }
    }
    // Otherwise pick independent rays greedily and match by degree.
    Cone basis;
    for (std::size_t i = 0; i < a_.rays().size() && basis.size() < d; ++i) {
      Cone trial = basis;
      trial.push_back(i);
      if (rank(ray_columns(a_, trial)) == trial.size()) {
        basis = trial;
      }
    }
    if (basis.size() != d) {
      return std::nullopt;
    }
    set_basis(basis);
    Cone images;
    return extend(images);
  }

 private:
  void set_basis(const Cone& basis) {
    basis_ = basis;
    basis_inverse_ = *inverse(ray_columns(a_, basis));
  }

  std::optional<FanIsomorphism> extend(Cone& images) {
    if (images.size() == basis_.size()) {
      return attempt(images);
    }
    const std::size_t source = basis_[images.size()];
    for (std::size_t j = 0; j < b_.rays().size(); ++j) {
      if (std::find(images.begin(), images.end(), j) != images.end() ||
          a_.ray_degree(source) != b_.ray_degree(j)) {
        continue;
      }
      images.push_back(j);
      if (auto found = extend(images)) {
        return found;
      }
      images.pop_back();
    }
    return std::nullopt;
  }

  std::optional<FanIsomorphism> attempt(const Cone& images) {
    const std::size_t d = a_.rank();
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      for (const auto& [from, to] : pins_) {
        if (from == basis_[k] && to != images[k]) {
          return std::nullopt;
        }
      }
    }
    RationalMatrix w(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        w(i, j) = b_.ray(images[j])[i];
      }
    }
    RationalMatrix m = w * basis_inverse_;
    IntMatrix mi(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (denominator(m(i, j)) != 1) {
          return std::nullopt;
        }
        mi(i, j) = to_int(m(i, j));
      }
    }
    Integer det = determinant(mi);
    if (det != 1 && det != -1) {
      return std::nullopt;
    }
    std::vector<std::size_t> ray_map;
    std::vector<bool> used(b_.rays().size(), false);
    for (const auto& r : a_.rays()) {
      auto it = b_index_.find(mi.apply(r));
      if (it == b_index_.end() || used[it->second]) {
        return std::nullopt;
      }
      used[it->second] = true;
      ray_map.push_back(it->second);
    }
    for (const auto& [from, to] : pins_) {
      if (ray_map.at(from) != to) {
        return std::nullopt;
      }
    }
    for (const auto& c : a_.cones()) {
      Cone mapped;
      for (auto i : c) {
        mapped.push_back(ray_map[i]);
      }
      std::sort(mapped.begin(), mapped.end());
      if (!b_cones_.count(mapped)) {
        return std::nullopt;
      }
    }
    return FanIsomorphism{std::move(mi), std::move(ray_map)};
  }

  const Fan& a_;
  const Fan& b_;
  const std::vector<std::pair<std::size_t, std::size_t>>& pins_;
  std::set<Cone> b_cones_;
  std::map<IntVector, std::size_t> b_index_;
  Cone basis_;
  RationalMatrix basis_inverse_;
};

}  // namespace

std::optional<FanIsomorphism> fans_isomorphic(const Fan& a, const Fan& b,
                                              const std::vector<std::pair<std::size_t, std::size_t>>& pins) {
  if (a.rank() != b.rank()) {
    throw std::invalid_argument("fans_isomorphic: rank mismatch (" + std::to_string(a.rank()) + " vs " +
                                std::to_string(b.rank()) + ")");
  }
  for (const auto& [from, to] : pins) {
    if (from >= a.rays().size() || to >= b.rays().size()) {
      throw std::invalid_argument("fans_isomorphic: pin references a missing ray");
    }
  }
  if (a.rays().size() != b.rays().size() || a.cones().size() != b.cones().size()) {
    return std::nullopt;
  }
  if (a.rank() == 0) {
    return FanIsomorphism{IntMatrix(0, 0), {}};
  }
  return IsomorphismSearch(a, b, pins).run();
}

namespace {

std::vector<Inequality> section_inequalities(const Fan& f, const ToricDivisor& d, std::uint64_t flipped) {
  std::vector<Inequality> out;
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    RationalVector normal = to_rational(f.ray(i));
    if ((flipped >> i) & 1U) {
      // <u, v_i> <= -a_i - 1
      for (auto& x : normal) {
        x = -x;
      }
      out.push_back({std::move(normal), Rational(d.coefficients[i] + 1)});
    } else {
      out.push_back({std::move(normal), Rational(-d.coefficients[i])});
    }
  }
  return out;
}

void check_divisor(const Fan& f, const ToricDivisor& d) {
  if (d.coefficients.size() != f.rays().size()) {
    throw std::invalid_argument("divisor has " + std::to_string(d.coefficients.size()) +
                                " coefficients but the fan has " + std::to_string(f.rays().size()) + " rays");
  }
}

// Reduced Betti numbers over Q of the complex of subsets of `vertices` that
// lie in some maximal cone, indexed by face size (entry s is h~_{s-1}).
std::vector<std::size_t> reduced_betti(const Fan& f, std::uint64_t vertices) {
  const std::size_t d = f.rank();
  std::vector<std::set<std::uint64_t>> faces(d + 1);
  for (const auto& c : f.cones()) {
    std::uint64_t cone_mask = 0;
    for (auto i : c) {
      cone_mask |= std::uint64_t{1} << i;
    }
    std::uint64_t top = cone_mask & vertices;
    // Every subset of top, including the empty face.
    for (std::uint64_t s = top;; s = (s - 1) & top) {
      faces[static_cast<std::size_t>(std::popcount(s))].insert(s);
      if (s == 0) {
        break;
      }
    }
  }
  std::vector<std::vector<std::uint64_t>> listed(d + 1);
  for (std::size_t s = 0; s <= d; ++s) {
    listed[s].assign(faces[s].begin(), faces[s].end());
  }
  // boundary_rank[s]: rank of the boundary from size-s faces to size-(s-1).
  std::vector<std::size_t> boundary_rank(d + 2, 0);
  for (std::size_t s = 1; s <= d; ++s) {
    if (listed[s].empty() || listed[s - 1].empty()) {
      continue;
    }
    std::map<std::uint64_t, std::size_t> row_of;
    for (std::size_t r = 0; r < listed[s - 1].size(); ++r) {
      row_of[listed[s - 1][r]] = r;
    }
    IntMatrix boundary(listed[s - 1].size(), listed[s].size());
    for (std::size_t c = 0; c < listed[s].size(); ++c) {
      std::uint64_t face = listed[s][c];
      Int sign = 1;
      for (std::uint64_t rest = face; rest; rest &= rest - 1) {
        std::uint64_t bit = rest & (~rest + 1);
        boundary(row_of.at(face & ~bit), c) = sign;
        sign = -sign;
      }
    }
    boundary_rank[s] = rank(boundary);
  }
  std::vector<std::size_t> betti(d + 1, 0);
  for (std::size_t s = 0; s <= d; ++s) {
    betti[s] = listed[s].size() - boundary_rank[s] - boundary_rank[s + 1];
  }
  return betti;
}

}  // namespace

std::vector<IntVector> section_basis(const Fan& f, const ToricDivisor& d) {
  check_divisor(f, d);
  return Polyhedron(f.rank(), section_inequalities(f, d, 0)).lattice_points();
}

std::vector<Integer> cohomology(const Fan& f, const ToricDivisor& d) {
  check_divisor(f, d);
  if (!is_smooth(f) || !is_complete(f)) {
    throw std::invalid_argument("cohomology requires a smooth complete fan");
  }
  const std::size_t rank = f.rank();
  std::vector<Integer> h(rank + 1, 0);
  if (rank == 0) {
    h[0] = 1;
    return h;
  }
  if (f.rays().size() >= 63) {
    throw std::length_error("cohomology supports at most 62 rays");
  }
  const std::uint64_t all = (std::uint64_t{1} << f.rays().size()) - 1;
  for (std::uint64_t subset = 0; subset <= all; ++subset) {
    auto betti = reduced_betti(f, subset);
    if (std::all_of(betti.begin(), betti.end(), [](std::size_t b) { return b == 0; })) {
      continue;
    }
    Polyhedron region(rank, section_inequalities(f, d, subset));
    if (region.empty()) {
      continue;
    }
    if (!region.is_bounded()) {
      throw std::domain_error("cohomology: unbounded character region with nonzero cohomology");
    }
    Integer count = region.count_lattice_points();
    for (std::size_t p = 0; p <= rank; ++p) {
      h[p] += count * betti[p];
    }
  }
  return h;
}

ToricDivisor divisor_class(const Fan& f, Int a, Int b) {
  if (!f.blowup_tag()) {
    throw std::invalid_argument("divisor_class requires a fan built by blowup_fan");
  }
  ToricDivisor d{IntVector(f.rays().size(), 0)};
  d.coefficients.front() = a;
  d.coefficients.at(static_cast<std::size_t>(f.blowup_tag()->n) + 1) = b;
  return d;
}

ToricDivisor canonical_divisor(const Fan& f) { return ToricDivisor{IntVector(f.rays().size(), -1)}; }

BlowdownResult is_star_subdivision_blowdown(const Fan& finer, const Fan& coarser) {
  if (finer.rank() != coarser.rank()) {
    throw std::invalid_argument("is_star_subdivision_blowdown: rank mismatch");
  }
  BlowdownResult result;
  std::vector<std::size_t> extra;
  for (std::size_t i = 0; i < finer.rays().size(); ++i) {
    if (!coarser.find_ray(finer.ray(i))) {
      extra.push_back(i);
    }
  }
  for (const auto& r : coarser.rays()) {
    if (!finer.find_ray(r)) {
      result.reason = "a ray of the coarser fan is missing from the finer fan";
      return result;
    }
  }
  if (extra.size() != 1) {
    result.reason = "the ray sets differ by " + std::to_string(extra.size()) + " rays, expected exactly one";
    return result;
  }
  Fan subdivided = coarser;
  try {
    subdivided = star_subdivision(coarser, finer.ray(extra.front()));
  } catch (const std::invalid_argument& e) {
    result.reason = e.what();
    return result;
  }
  if (!subdivided.same_as(finer)) {
    result.reason = "the finer fan is not the star subdivision at the extra ray";
    return result;
  }
  result.ok = true;
  result.contracted_ray = extra.front();
  return result;
}

}  // namespace qmoduli
