#include "chabauty/linalg.hpp"

#include <algorithm>
#include <utility>

#include "chabauty/error.hpp"

namespace chabauty {

namespace {

struct ZMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> data;

  ZMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Integer& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Integer& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(at(r, a), at(r, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(at(a, c), at(b, c));
  }
  // col_dst += k * col_src
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t r = 0; r < rows; ++r) at(r, dst) += k * at(r, src);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t c = 0; c < cols; ++c) at(dst, c) += k * at(src, c);
  }
  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows; ++r) at(r, c) = -at(r, c);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols; ++c) at(r, c) = -at(r, c);
  }
};

Integer denominator_lcm(const QMatrix& m) {
  Integer l = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) l = lcm_denominators_of(m(r, c), l);
  }
  return l;
}

ZMatrix scaled_integer(const QMatrix& m, const Integer& scale) {
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rational v = m(r, c) * scale;
      z.at(r, c) = v.get_num();
    }
  }
  return z;
}

ZMatrix identity_z(std::size_t n) {
  ZMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i) z.at(i, i) = 1;
  return z;
}

QMatrix to_rational(const ZMatrix& z, const Integer& scale) {
  QMatrix m(z.rows, z.cols);
  for (std::size_t r = 0; r < z.rows; ++r) {
    for (std::size_t c = 0; c < z.cols; ++c) {
      m(r, c) = Rational(z.at(r, c), scale);
      m(r, c).canonicalize();
    }
  }
  return m;
}

// In-place column HNF; returns the number of nonzero columns, which are
// moved to the front.
std::size_t integer_hnf(ZMatrix& a) {
  std::size_t piv = 0;
  for (std::size_t i = 0; i < a.rows && piv < a.cols; ++i) {
    for (std::size_t j = piv + 1; j < a.cols; ++j) {
      if (a.at(i, j) == 0) continue;
      if (a.at(i, piv) == 0) {
        a.swap_cols(piv, j);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.at(i, piv).get_mpz_t(),
                 a.at(i, j).get_mpz_t());
      Integer u = a.at(i, piv) / g;
      Integer v = a.at(i, j) / g;
      for (std::size_t r = 0; r < a.rows; ++r) {
        Integer x = a.at(r, piv);
        Integer y = a.at(r, j);
        a.at(r, piv) = s * x + t * y;
        a.at(r, j) = u * y - v * x;
      }
    }
    if (a.at(i, piv) == 0) continue;
    if (a.at(i, piv) < 0) a.negate_col(piv);
    for (std::size_t k = 0; k < piv; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a.at(i, k).get_mpz_t(), a.at(i, piv).get_mpz_t());
      if (q != 0) a.add_col(k, piv, -q);
    }
    ++piv;
  }
  return piv;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

QMatrix hnf(const QMatrix& m) {
  if (m.cols() == 0) return QMatrix(m.rows(), 0);
  Integer scale = denominator_lcm(m);
  ZMatrix z = scaled_integer(m, scale);
  std::size_t r = integer_hnf(z);
  ZMatrix kept(z.rows, r);
  for (std::size_t i = 0; i < z.rows; ++i) {
    for (std::size_t j = 0; j < r; ++j) kept.at(i, j) = z.at(i, j);
  }
  return to_rational(kept, scale);
}

std::vector<std::size_t> pivot_rows(const QMatrix& echelon) {
  std::vector<std::size_t> out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < echelon.cols(); ++c) {
    while (row < echelon.rows() && echelon(row, c) == 0) ++row;
    if (row == echelon.rows()) throw PreconditionError("matrix is not in column echelon form");
    out.push_back(row);
    ++row;
  }
  return out;
}

SmithForm snf(const QMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer scale = denominator_lcm(m);
  ZMatrix a = scaled_integer(m, scale);
  ZMatrix u = identity_z(rows);
  ZMatrix v = identity_z(cols);
  const std::size_t n = std::min(rows, cols);

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a.at(i, j) == 0) continue;
          if (bi == rows || abs(a.at(i, j)) < abs(a.at(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) break;
      a.swap_rows(t, bi);
      u.swap_rows(t, bi);
      a.swap_cols(t, bj);
      v.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a.at(i, t) == 0) continue;
        Integer q = a.at(i, t) / a.at(t, t);
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (a.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a.at(t, j) == 0) continue;
        Integer q = a.at(t, j) / a.at(t, t);
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (a.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a.at(i, j) % a.at(t, t) != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      a.add_row(t, bad, 1);
      u.add_row(t, bad, 1);
    }
    if (a.at(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }

  SmithForm out;
  out.left = to_rational(u, 1);
  out.right = to_rational(v, 1);
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.diagonal[i] = Rational(a.at(i, i), scale);
    out.diagonal[i].canonicalize();
  }
  return out;
}

QMatrix span_basis(const QMatrix& m) {
  QMatrix t = m.transpose();
  std::vector<std::size_t> pivots = rref(t);
  QMatrix out(m.rows(), pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, k) = t(k, r);
  }
  return out;
}

QMatrix kernel_basis(const QMatrix& m) {
  QMatrix r = m;
  std::vector<std::size_t> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector x(m.cols());
    x[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -r(k, free);
    basis.push_back(std::move(x));
  }
  return span_basis(QMatrix::from_columns(m.cols(), basis));
}

std::size_t rank(const QMatrix& m) {
  QMatrix r = m;
  return rref(r).size();
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of non-square matrix");
  QMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a(sel, c) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(sel, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug = m.hconcat(QMatrix::identity(n));
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  return aug.select_columns(n, n);
}

std::optional<QVector> solve_full_column_rank(const QMatrix& m, const QVector& rhs) {
  QMatrix aug = m.hconcat(QMatrix::from_columns(m.rows(), {rhs}));
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  if (pivots.size() != m.cols()) throw PreconditionError("matrix does not have full column rank");
  QVector x(m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, m.cols());
  return x;
}

}  // namespace chabauty
