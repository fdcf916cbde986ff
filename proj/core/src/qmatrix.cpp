#include "chabauty/qmatrix.hpp"

#include "chabauty/error.hpp"

namespace chabauty {

QVector operator+(const QVector& x, const QVector& y) {
  QVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

QVector operator-(const QVector& x, const QVector& y) {
  QVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

QVector operator*(const Rational& s, const QVector& x) {
  QVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
  return r;
}

Rational dot(const QVector& x, const QVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Rational norm2(const QVector& x) { return dot(x, x); }

bool is_zero(const QVector& x) {
  for (const auto& v : x) {
    if (v != 0) return false;
  }
  return true;
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw PreconditionError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(std::size_t rows, const std::vector<QVector>& columns) {
  QMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw PreconditionError("generator dimension mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

QMatrix QMatrix::diagonal(const QVector& entries) {
  QMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<QVector> QMatrix::columns() const {
  std::vector<QVector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

void QMatrix::set_column(std::size_t c, const QVector& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

QMatrix QMatrix::hconcat(const QMatrix& other) const {
  if (cols_ == 0 && rows_ == 0) return other;
  if (other.cols_ == 0 && other.rows_ == 0) return *this;
  if (rows_ != other.rows_) throw PreconditionError("row count mismatch in hconcat");
  QMatrix m(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) m(r, cols_ + c) = other(r, c);
  }
  return m;
}

QMatrix QMatrix::select_columns(std::size_t first, std::size_t count) const {
  QMatrix m(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
  }
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matrix product dimension mismatch");
  QMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) throw PreconditionError("matrix-vector dimension mismatch");
  QVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (x[k] != 0) y[i] += a(i, k) * x[k];
    }
  }
  return y;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("matrix sum dimension mismatch");
  QMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
  }
  return m;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = s * a(i, j);
  }
  return m;
}

}  // namespace chabauty
