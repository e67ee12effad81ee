#include "qmoduli/linalg.hpp"

#include <algorithm>
#include <utility>

namespace qmoduli {

namespace mp = boost::multiprecision;

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(r, c) = m(r, c);
    }
  }
  return out;
}

std::vector<std::size_t> reduce_rows(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t best = pivot_row;
    while (best < m.rows() && m(best, c) == 0) {
      ++best;
    }
    if (best == m.rows()) {
      continue;
    }
    if (best != pivot_row) {
      for (std::size_t k = 0; k < m.cols(); ++k) {
        std::swap(m(best, k), m(pivot_row, k));
      }
    }
    Rational inv = 1 / m(pivot_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) {
      m(pivot_row, k) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m(r, c) == 0) {
        continue;
      }
      Rational factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) {
        m(r, k) -= factor * m(pivot_row, k);
      }
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return pivots;
}

std::size_t rank(RationalMatrix m) { return reduce_rows(m).size(); }

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) {
    throw std::invalid_argument("solve: size mismatch");
  }
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      aug(r, c) = a(r, c);
    }
    aug(r, a.cols()) = b[r];
  }
  auto pivots = reduce_rows(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) {
    return std::nullopt;
  }
  RationalVector x(a.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    x[pivots[i]] = aug(i, a.cols());
  }
  return x;
}

std::vector<RationalVector> kernel(const RationalMatrix& a) {
  RationalMatrix m = a;
  auto pivots = reduce_rows(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) {
    is_pivot[p] = true;
  }
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) {
      continue;
    }
    RationalVector v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = -m(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

// Replace columns (i, j) of both matrices by a unimodular combination that
// leaves gcd(a(row,i), a(row,j)) in column i and zero in column j.
void column_gcd_step(IntegerMatrix& a, IntegerMatrix& u, std::size_t row, std::size_t i,
                     std::size_t j) {
  Integer x = a(row, i);
  Integer y = a(row, j);
  // Extended Euclid: s*x + t*y = g.
  Integer old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  Integer g = old_r;
  Integer cs = old_s, ct = old_t;
  if (g < 0) {
    g = -g;
    cs = -cs;
    ct = -ct;
  }
  Integer xi = x / g, yi = y / g;
  auto combine = [&](IntegerMatrix& m) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
      Integer ci = m(k, i), cj = m(k, j);
      m(k, i) = cs * ci + ct * cj;
      m(k, j) = -yi * ci + xi * cj;
    }
  };
  combine(a);
  combine(u);
}

}  // namespace

IntMatrix integer_kernel(const IntMatrix& input) {
  const std::size_t n = input.cols();
  IntegerMatrix a(input.rows(), n);
  for (std::size_t r = 0; r < input.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      a(r, c) = input(r, c);
    }
  }
  IntegerMatrix u = IntegerMatrix::identity(n);
  std::size_t pivot_col = 0;
  for (std::size_t row = 0; row < a.rows() && pivot_col < n; ++row) {
    for (std::size_t j = pivot_col + 1; j < n; ++j) {
      if (a(row, j) != 0) {
        column_gcd_step(a, u, row, pivot_col, j);
      }
    }
    if (a(row, pivot_col) != 0) {
      ++pivot_col;
    }
  }
  const std::size_t dim = n - pivot_col;
  std::vector<std::vector<Integer>> basis;
  for (std::size_t c = pivot_col; c < n; ++c) {
    basis.push_back(u.column(c));
  }
  // Pairwise size reduction keeps entries small; it is a unimodular change.
  bool changed = true;
  for (int sweep = 0; changed && sweep < 64; ++sweep) {
    changed = false;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        if (i == j) {
          continue;
        }
        Integer bj_bj = 0, bi_bj = 0;
        for (std::size_t k = 0; k < n; ++k) {
          bj_bj += basis[j][k] * basis[j][k];
          bi_bj += basis[i][k] * basis[j][k];
        }
        if (bj_bj == 0 || 2 * mp::abs(bi_bj) <= bj_bj) {
          continue;
        }
        // Nearest integer to <bi,bj>/<bj,bj>.
        Integer q = floor(Rational(2 * bi_bj + bj_bj, 2 * bj_bj));
        if (q != 0) {
          for (std::size_t k = 0; k < n; ++k) {
            basis[i][k] -= q * basis[j][k];
          }
          changed = true;
        }
      }
    }
  }
  IntMatrix out(n, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      out(r, c) = to_int(basis[c][r]);
    }
  }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant: matrix not square");
  }
  const std::size_t n = m.rows();
  if (n == 0) {
    return 1;
  }
  // Bareiss fraction-free elimination.
  IntegerMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      a(r, c) = m(r, c);
    }
  }
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) {
        ++swap_row;
      }
      if (swap_row == n) {
        return 0;
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(k, c), a(swap_row, c));
      }
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(RationalMatrix m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant: matrix not square");
  }
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) {
      ++p;
    }
    if (p == n) {
      return 0;
    }
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m(p, k), m(c, k));
      }
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) {
        continue;
      }
      Rational f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) {
        m(r, k) -= f * m(c, k);
      }
    }
  }
  return det;
}

std::optional<IntMatrix> integer_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    return std::nullopt;
  }
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      aug(r, c) = m(r, c);
    }
    aug(r, n + r) = 1;
  }
  auto pivots = reduce_rows(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
    return std::nullopt;
  }
  IntMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& v = aug(r, n + c);
      if (mp::denominator(v) != 1) {
        return std::nullopt;
      }
      inv(r, c) = to_int(v);
    }
  }
  return inv;
}

Integer maximal_minor_gcd(const IntMatrix& rows) {
  const std::size_t k = rows.rows();
  const std::size_t d = rows.cols();
  if (k > d) {
    return 0;
  }
  if (k == 0) {
    return 1;
  }
  Integer g = 0;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) {
    pick[i] = i;
  }
  while (true) {
    IntMatrix minor(k, k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        minor(r, c) = rows(r, pick[c]);
      }
    }
    g = mp::gcd(g, determinant(minor));
    if (g == 1) {
      return g;
    }
    // Next k-combination of {0..d-1}.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == d - k + i - 1) {
      --i;
    }
    if (i == 0) {
      break;
    }
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) {
      pick[j] = pick[j - 1] + 1;
    }
  }
  return g;
}

}  // namespace qmoduli
