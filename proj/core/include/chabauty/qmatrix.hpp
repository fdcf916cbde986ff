#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "chabauty/rational.hpp"

namespace chabauty {

using QVector = std::vector<Rational>;

QVector operator+(const QVector& x, const QVector& y);
QVector operator-(const QVector& x, const QVector& y);
QVector operator*(const Rational& s, const QVector& x);
Rational dot(const QVector& x, const QVector& y);
Rational norm2(const QVector& x);
bool is_zero(const QVector& x);

// Dense rational matrix, row-major. Columns play the role of generators
// throughout the library.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix from_columns(std::size_t rows, const std::vector<QVector>& columns);
  static QMatrix diagonal(const QVector& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector column(std::size_t c) const;
  std::vector<QVector> columns() const;
  void set_column(std::size_t c, const QVector& v);
  QMatrix transpose() const;
  // Horizontal concatenation; an empty operand with zero rows is accepted.
  QMatrix hconcat(const QMatrix& other) const;
  QMatrix select_columns(std::size_t first, std::size_t count) const;

  bool operator==(const QMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& x);
QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Rational& s, const QMatrix& a);

}  // namespace chabauty
