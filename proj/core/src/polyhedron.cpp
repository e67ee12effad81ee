#include "qmoduli/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "combinations.hpp"

namespace qmoduli {

namespace {

// Scale so that the first nonzero coefficient is +-1 (positive factor only).
Inequality normalized(Inequality ineq) {
  for (const auto& c : ineq.normal) {
    if (c != 0) {
      Rational s = c > 0 ? Rational(c) : Rational(-c);
      for (auto& x : ineq.normal) {
        x /= s;
      }
      ineq.bound /= s;
      break;
    }
  }
  return ineq;
}

// Drops duplicates, keeping the tightest bound for each normal direction.
std::vector<Inequality> simplify(const std::vector<Inequality>& system) {
  std::map<RationalVector, Rational> best;
  for (const auto& raw : system) {
    auto ineq = normalized(raw);
    auto [it, inserted] = best.emplace(ineq.normal, ineq.bound);
    if (!inserted && ineq.bound > it->second) {
      it->second = ineq.bound;
    }
  }
  std::vector<Inequality> out;
  out.reserve(best.size());
  for (auto& [normal, bound] : best) {
    out.push_back({normal, bound});
  }
  return out;
}

RationalMatrix normals_matrix(const std::vector<Inequality>& system, std::size_t dim,
                              const std::vector<std::size_t>& pick) {
  RationalMatrix m(pick.size(), dim);
  for (std::size_t r = 0; r < pick.size(); ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m(r, c) = system[pick[r]].normal[c];
    }
  }
  return m;
}

}  // namespace

Polyhedron::Polyhedron(std::size_t dim, std::vector<Inequality> constraints)
    : dim_(dim), constraints_(std::move(constraints)) {
  for (const auto& c : constraints_) {
    if (c.normal.size() != dim_) {
      throw std::invalid_argument("Polyhedron: inequality has wrong dimension");
    }
  }
}

bool Polyhedron::contains(const RationalVector& x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("Polyhedron::contains: wrong dimension");
  }
  for (const auto& c : constraints_) {
    if (dot(c.normal, x) < c.bound) {
      return false;
    }
  }
  return true;
}

bool Polyhedron::contains(const IntVector& x) const { return contains(to_rational(x)); }

std::optional<RationalVector> Polyhedron::find_point() const {
  // levels[k] holds the projection onto variables 0..k-1 (levels[dim_] is
  // the original system).
  std::vector<std::vector<Inequality>> levels(dim_ + 1);
  levels[dim_] = simplify(constraints_);
  for (std::size_t k = dim_; k-- > 0;) {
    const auto& sys = levels[k + 1];
    std::vector<Inequality> next, pos, neg;
    for (const auto& c : sys) {
      if (c.normal[k] > 0) {
        pos.push_back(c);
      } else if (c.normal[k] < 0) {
        neg.push_back(c);
      } else {
        next.push_back(c);
      }
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        Rational sp = p.normal[k], sn = -n.normal[k];
        Inequality comb{RationalVector(dim_), p.bound / sp + n.bound / sn};
        for (std::size_t i = 0; i < dim_; ++i) {
          comb.normal[i] = p.normal[i] / sp + n.normal[i] / sn;
        }
        comb.normal[k] = 0;
        next.push_back(std::move(comb));
      }
    }
    levels[k] = simplify(next);
  }
  for (const auto& c : levels[0]) {
    if (c.bound > 0) {
      return std::nullopt;
    }
  }
  RationalVector x(dim_, Rational(0));
  for (std::size_t k = 0; k < dim_; ++k) {
    std::optional<Rational> lo, hi;
    for (const auto& c : levels[k + 1]) {
      const Rational& a = c.normal[k];
      if (a == 0) {
        continue;
      }
      Rational rest = c.bound;
      for (std::size_t i = 0; i < k; ++i) {
        rest -= c.normal[i] * x[i];
      }
      Rational b = rest / a;
      if (a > 0) {
        if (!lo || b > *lo) {
          lo = b;
        }
      } else if (!hi || b < *hi) {
        hi = b;
      }
    }
    if (lo && hi && *lo > *hi) {
      return std::nullopt;  // unreachable when elimination is exact
    }
    if (lo) {
      Rational c = Rational(ceil(*lo));
      x[k] = (!hi || c <= *hi) ? c : *lo;
    } else if (hi) {
      x[k] = Rational(floor(*hi));
    } else {
      x[k] = 0;
    }
  }
  return x;
}

bool Polyhedron::is_bounded() const {
  if (!find_point()) {
    return true;
  }
  if (dim_ == 0) {
    return true;
  }
  std::vector<std::size_t> all(constraints_.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i] = i;
  }
  if (rank(normals_matrix(constraints_, dim_, all)) < dim_) {
    return false;
  }
  bool bounded = true;
  detail::for_each_combination(constraints_.size(), dim_ - 1, [&](const auto& pick) {
    auto m = normals_matrix(constraints_, dim_, pick);
    auto ker = kernel(m);
    if (ker.size() != 1) {
      return true;
    }
    for (int sign : {1, -1}) {
      RationalVector r = ker.front();
      for (auto& v : r) {
        v *= sign;
      }
      bool recedes = std::all_of(constraints_.begin(), constraints_.end(),
                                 [&](const Inequality& c) { return dot(c.normal, r) >= 0; });
      if (recedes) {
        bounded = false;
        return false;
      }
    }
    return true;
  });
  return bounded;
}

std::vector<RationalVector> Polyhedron::vertices() const {
  std::set<RationalVector> found;
  if (dim_ == 0) {
    if (contains(RationalVector{})) {
      found.insert(RationalVector{});
    }
    return {found.begin(), found.end()};
  }
  detail::for_each_combination(constraints_.size(), dim_, [&](const auto& pick) {
    auto m = normals_matrix(constraints_, dim_, pick);
    RationalVector rhs;
    rhs.reserve(pick.size());
    for (auto i : pick) {
      rhs.push_back(constraints_[i].bound);
    }
    if (rank(m) < dim_) {
      return true;
    }
    auto x = solve(m, rhs);
    if (x && contains(*x)) {
      found.insert(*x);
    }
    return true;
  });
  return {found.begin(), found.end()};
}

namespace {

void enumerate_box(const Polyhedron& poly, const std::vector<Int>& lo, const std::vector<Int>& hi,
                   IntVector& current, std::size_t depth, std::vector<IntVector>& out) {
  if (depth == lo.size()) {
    if (poly.contains(current)) {
      out.push_back(current);
    }
    return;
  }
  for (Int v = lo[depth]; v <= hi[depth]; ++v) {
    current[depth] = v;
    enumerate_box(poly, lo, hi, current, depth + 1, out);
  }
}

}  // namespace

std::vector<IntVector> Polyhedron::lattice_points() const {
  if (!find_point()) {
    return {};
  }
  if (!is_bounded()) {
    throw std::domain_error("lattice_points: polyhedron is unbounded");
  }
  auto verts = vertices();
  std::vector<Int> lo(dim_), hi(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Rational mn = verts.front()[i], mx = verts.front()[i];
    for (const auto& v : verts) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = to_int(ceil(mn));
    hi[i] = to_int(floor(mx));
  }
  std::vector<IntVector> out;
  IntVector current(dim_);
  enumerate_box(*this, lo, hi, current, 0, out);
  return out;
}

std::size_t Polyhedron::count_lattice_points() const { return lattice_points().size(); }

std::vector<RationalVector> standard_form_vertices(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) {
    throw std::invalid_argument("standard_form_vertices: size mismatch");
  }
  const std::size_t n = a.cols();
  RationalMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      aug(r, c) = a(r, c);
    }
    aug(r, n) = b[r];
  }
  auto pivots = reduce_rows(aug);
  if (!pivots.empty() && pivots.back() == n) {
    return {};  // inconsistent equalities
  }
  const std::size_t r = pivots.size();
  std::set<RationalVector> found;
  if (r == 0) {
    found.insert(RationalVector(n, Rational(0)));
    return {found.begin(), found.end()};
  }
  detail::for_each_combination(n, r, [&](const auto& cols) {
    RationalMatrix basis(r, r);
    RationalVector rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        basis(i, j) = aug(i, cols[j]);
      }
      rhs[i] = aug(i, n);
    }
    if (determinant(basis) == 0) {
      return true;
    }
    auto xb = solve(basis, rhs);
    if (!xb) {
      return true;
    }
    if (std::any_of(xb->begin(), xb->end(), [](const Rational& v) { return v < 0; })) {
      return true;
    }
    RationalVector x(n, Rational(0));
    for (std::size_t j = 0; j < r; ++j) {
      x[cols[j]] = (*xb)[j];
    }
    found.insert(std::move(x));
    return true;
  });
  return {found.begin(), found.end()};
}

std::size_t LatticePolytope::expected_dimension() const {
  return ambient_dim() - rank(equalities);
}

int LatticePolytope::dimension() const {
  if (vertices.empty()) {
    return -1;
  }
  RationalMatrix diffs(vertices.size() - 1, ambient_dim());
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    for (std::size_t c = 0; c < ambient_dim(); ++c) {
      diffs(i - 1, c) = vertices[i][c] - vertices[0][c];
    }
  }
  return static_cast<int>(rank(diffs));
}

}  // namespace qmoduli
