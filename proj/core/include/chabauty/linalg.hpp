#pragma once

#include <optional>
#include <vector>

#include "chabauty/qmatrix.hpp"

namespace chabauty {

// Column Hermite normal form over Q: the denominators are cleared, the
// integer HNF is taken and the result is rescaled. Zero columns are dropped.
// Column j has its pivot strictly below the pivot of column j-1, a positive
// pivot, zeros above it, and entries of earlier columns in its pivot row
// reduced into [0, pivot).
QMatrix hnf(const QMatrix& m);

// Row indices of the pivots of a matrix in column HNF (or column echelon form).
std::vector<std::size_t> pivot_rows(const QMatrix& echelon);

struct SmithForm {
  QMatrix left;                  // unimodular, rows x rows
  std::vector<Rational> diagonal;  // min(rows, cols) entries, d_i | d_{i+1}
  QMatrix right;                 // unimodular, cols x cols
};

// left * m * right = diag(diagonal) (padded with zeros to the shape of m).
SmithForm snf(const QMatrix& m);

// Canonical basis of the column span: the columns of the transpose of the
// reduced row echelon form of m^T, zero columns removed.
QMatrix span_basis(const QMatrix& m);

// Canonical basis (span_basis form) of {x : m x = 0}.
QMatrix kernel_basis(const QMatrix& m);

std::size_t rank(const QMatrix& m);
Rational determinant(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);

// Unique solution of m x = rhs for m of full column rank; nullopt when the
// system is inconsistent.
std::optional<QVector> solve_full_column_rank(const QMatrix& m, const QVector& rhs);

}  // namespace chabauty
