#include "qmoduli/semi_invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qmoduli {

Int Monomial::total_degree() const { return std::accumulate(exponents.begin(), exponents.end(), Int{0}); }

bool grlex_less(const Monomial& a, const Monomial& b) {
  Int da = a.total_degree(), db = b.total_degree();
  if (da != db) {
    return da < db;
  }
  return a.exponents > b.exponents;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.exponents.size() != b.exponents.size()) {
    throw std::invalid_argument("monomial product: size mismatch");
  }
  Monomial out{a.exponents};
  for (std::size_t i = 0; i < out.exponents.size(); ++i) {
    out.exponents[i] += b.exponents[i];
  }
  return out;
}

IntMatrix divergence_matrix(const Quiver& q) {
  IntMatrix d(static_cast<std::size_t>(q.vertex_count()), q.arrow_count());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    d(static_cast<std::size_t>(arrow.target - 1), a) += 1;
    d(static_cast<std::size_t>(arrow.source - 1), a) -= 1;
  }
  return d;
}

Weight monomial_weight(const Quiver& q, const Monomial& mo) {
  if (mo.exponents.size() != q.arrow_count()) {
    throw std::invalid_argument("monomial has " + std::to_string(mo.exponents.size()) +
                                " exponents but the quiver has " + std::to_string(q.arrow_count()) +
                                " arrows");
  }
  std::vector<Integer> w(static_cast<std::size_t>(q.vertex_count()), 0);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    w[static_cast<std::size_t>(q.arrow(a).target - 1)] += mo.exponents[a];
    w[static_cast<std::size_t>(q.arrow(a).source - 1)] -= mo.exponents[a];
  }
  return Weight(std::move(w));
}

namespace {

IntVector scaled_target(const Quiver& q, const Weight& w, Int r) {
  if (w.size() != static_cast<std::size_t>(q.vertex_count())) {
    throw std::invalid_argument("weight size does not match the quiver");
  }
  IntVector b;
  for (const auto& e : w.entries()) {
    b.push_back(to_int(Integer(e * r)));
  }
  return b;
}

// Depth-first search over arrows in order. When an arrow is the last one
// touching some vertex, its exponent is forced by that vertex's balance.
class BasisSearch {
 public:
  BasisSearch(const Quiver& q, IntVector target) : q_(q), target_(std::move(target)) {
    const std::size_t n = target_.size();
    last_arrow_.assign(n, -1);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      last_arrow_[static_cast<std::size_t>(q.arrow(a).source - 1)] = static_cast<long>(a);
      last_arrow_[static_cast<std::size_t>(q.arrow(a).target - 1)] = static_cast<long>(a);
    }
    for (Int t : target_) {
      if (t < 0) {
        bound_ -= t;
      }
    }
    balance_.assign(n, 0);
    current_.assign(q.arrow_count(), 0);
  }

  std::vector<Monomial> run() {
    for (std::size_t v = 0; v < target_.size(); ++v) {
      if (last_arrow_[v] < 0 && target_[v] != 0) {
        return {};
      }
    }
    search(0);
    std::sort(found_.begin(), found_.end(), grlex_less);
    return std::move(found_);
  }

 private:
  void search(std::size_t a) {
    if (a == q_.arrow_count()) {
      found_.push_back(Monomial{current_});
      return;
    }
    const auto src = static_cast<std::size_t>(q_.arrow(a).source - 1);
    const auto dst = static_cast<std::size_t>(q_.arrow(a).target - 1);
    std::optional<Int> forced;
    auto force = [&](Int value) {
      if (forced && *forced != value) {
        return false;
      }
      forced = value;
      return true;
    };
    // balance = inflow - outflow so far; the arrow subtracts at its source
    // and adds at its target.
    if (last_arrow_[src] == static_cast<long>(a) && !force(balance_[src] - target_[src])) {
      return;
    }
    if (src != dst && last_arrow_[dst] == static_cast<long>(a) && !force(target_[dst] - balance_[dst])) {
      return;
    }
    Int lo = 0, hi = bound_;
    if (forced) {
      if (*forced < 0 || *forced > bound_) {
        return;
      }
      lo = hi = *forced;
    }
    for (Int x = lo; x <= hi; ++x) {
      current_[a] = x;
      balance_[src] -= x;
      balance_[dst] += x;
      search(a + 1);
      balance_[src] += x;
      balance_[dst] -= x;
    }
    current_[a] = 0;
  }

  const Quiver& q_;
  IntVector target_;
  std::vector<long> last_arrow_;
  Int bound_ = 0;
  IntVector balance_;
  IntVector current_;
  std::vector<Monomial> found_;
};

}  // namespace

std::vector<Monomial> semi_invariant_basis(const Quiver& q, const Weight& w, Int r) {
  if (r < 0) {
    throw std::invalid_argument("semi_invariant_basis: r must be nonnegative");
  }
  return BasisSearch(q, scaled_target(q, w, r)).run();
}

std::vector<std::size_t> hilbert_function(const Quiver& q, const Weight& w, Int r_max) {
  if (r_max < 0) {
    throw std::invalid_argument("hilbert_function: r_max must be nonnegative");
  }
  std::vector<std::size_t> out;
  for (Int r = 0; r <= r_max; ++r) {
    out.push_back(semi_invariant_basis(q, w, r).size());
  }
  return out;
}

bool degree_one_generation(const Quiver& q, const Weight& w, Int r_max) {
  if (r_max < 2) {
    throw std::invalid_argument("degree_one_generation: r_max must be at least 2");
  }
  const auto degree_one = semi_invariant_basis(q, w, 1);
  auto previous = degree_one;
  for (Int r = 1; r < r_max; ++r) {
    std::set<IntVector> lower;
    for (const auto& mo : previous) {
      lower.insert(mo.exponents);
    }
    auto next = semi_invariant_basis(q, w, r + 1);
    for (const auto& mo : next) {
      bool factors = false;
      for (const auto& g : degree_one) {
        IntVector rest(mo.exponents.size());
        bool fits = true;
        for (std::size_t i = 0; i < rest.size() && fits; ++i) {
          rest[i] = mo.exponents[i] - g.exponents[i];
          fits = rest[i] >= 0;
        }
        if (fits && lower.count(rest)) {
          factors = true;
          break;
        }
      }
      if (!factors) {
        return false;
      }
    }
    previous = std::move(next);
  }
  return true;
}

std::optional<Int> generation_degree(const Quiver& q, const Weight& w, Int r_max, Int max_degree) {
  for (Int d = 1; d <= max_degree; ++d) {
    if (degree_one_generation(q, w.scaled(d), r_max)) {
      return d;
    }
  }
  return std::nullopt;
}

std::optional<ProjectivePoint> ProjectivePoint::from(RationalVector coordinates) {
  auto first = std::find_if(coordinates.begin(), coordinates.end(), [](const Rational& c) { return c != 0; });
  if (first == coordinates.end()) {
    return std::nullopt;
  }
  Rational scale = *first;
  for (auto& c : coordinates) {
    c /= scale;
  }
  return ProjectivePoint(std::move(coordinates));
}

Rational evaluate(const Monomial& mo, const ThinRep& rep) {
  if (mo.exponents.size() != rep.values.size()) {
    throw std::invalid_argument("evaluate: monomial and representation sizes differ");
  }
  Rational value = 1;
  for (std::size_t a = 0; a < rep.values.size(); ++a) {
    for (Int k = 0; k < mo.exponents[a]; ++k) {
      value *= rep.values[a];
    }
  }
  return value;
}

std::optional<ProjectivePoint> evaluate_point(const ThinRep& rep, const std::vector<Monomial>& basis) {
  RationalVector coords;
  coords.reserve(basis.size());
  for (const auto& mo : basis) {
    coords.push_back(evaluate(mo, rep));
  }
  return ProjectivePoint::from(std::move(coords));
}

std::vector<IntVector> FlowPolytope::lattice_points() const {
  if (vertices.empty()) {
    return {};
  }
  const IntMatrix d = divergence_matrix(quiver);
  const std::size_t n = d.cols();
  RationalMatrix aug(d.rows(), n + 1);
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      aug(r, c) = d(r, c);
    }
    aug(r, n) = Rational(weight[r]);
  }
  auto pivots = reduce_rows(aug);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) {
    is_pivot[p] = true;
  }
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) {
      free.push_back(c);
    }
  }
  std::vector<Int> lo(free.size()), hi(free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    Rational mn = vertices.front()[free[k]], mx = mn;
    for (const auto& v : vertices) {
      mn = std::min(mn, v[free[k]]);
      mx = std::max(mx, v[free[k]]);
    }
    lo[k] = to_int(ceil(mn));
    hi[k] = to_int(floor(mx));
    if (lo[k] > hi[k]) {
      return {};
    }
  }
  // Pivot rows scaled to integers: den * x_pivot = rhs - sum coef * x_free.
  struct Row {
    Int den;
    Int rhs;
    std::vector<Int> coef;
  };
  std::vector<Row> rows;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Integer den = denominator(aug(r, n));
    for (auto f : free) {
      den = boost::multiprecision::lcm(den, denominator(aug(r, f)));
    }
    Row row{to_int(den), to_int(Rational(aug(r, n) * den)), {}};
    for (auto f : free) {
      row.coef.push_back(to_int(Rational(aug(r, f) * den)));
    }
    rows.push_back(std::move(row));
  }
  std::vector<IntVector> out;
  IntVector x(n, 0);
  std::vector<Int> assignment(lo);
  while (true) {
    for (std::size_t k = 0; k < free.size(); ++k) {
      x[free[k]] = assignment[k];
    }
    bool ok = true;
    for (std::size_t r = 0; r < rows.size() && ok; ++r) {
      Int value = rows[r].rhs;
      for (std::size_t k = 0; k < free.size(); ++k) {
        value -= rows[r].coef[k] * assignment[k];
      }
      ok = value >= 0 && value % rows[r].den == 0;
      if (ok) {
        x[pivots[r]] = value / rows[r].den;
      }
    }
    if (ok) {
      out.push_back(x);
    }
    std::size_t k = 0;
    while (k < free.size() && assignment[k] == hi[k]) {
      assignment[k] = lo[k];
      ++k;
    }
    if (k == free.size()) {
      break;
    }
    ++assignment[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticePolytope FlowPolytope::as_lattice_polytope() const {
  IntVector rhs;
  for (const auto& e : weight.entries()) {
    rhs.push_back(to_int(e));
  }
  return {divergence_matrix(quiver), std::move(rhs), vertices};
}

FlowPolytope flow_polytope(const Quiver& q, const Weight& w) {
  return {q, w, standard_form_vertices(divergence_matrix(q), scaled_target(q, w, 1))};
}

}  // namespace qmoduli
