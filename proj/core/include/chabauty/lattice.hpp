#pragma once

#include <vector>

#include "chabauty/qmatrix.hpp"

namespace chabauty {

// Basis of a discrete subgroup of Q^d: d rows, r <= d independent columns.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  // Throws PreconditionError unless the columns are linearly independent.
  explicit LatticeBasis(QMatrix basis);
  // Reduces arbitrary generators to a basis via hnf.
  static LatticeBasis from_generators(const QMatrix& generators);

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  bool full_rank() const { return rank() == ambient_dim(); }
  const QMatrix& basis() const { return basis_; }

 private:
  QMatrix basis_;
};

// Same Z-span.
bool same_lattice(const LatticeBasis& a, const LatticeBasis& b);

LatticeBasis dual_lattice(const LatticeBasis& b);

// Exact LLL reduction with parameter 3/4; same Z-span.
LatticeBasis lll_reduce(const LatticeBasis& b);

struct LatticeVector {
  QVector coefficients;  // integers
  QVector vector;
  Rational norm2;        // squared length, or squared distance for CVP
};

// Exact Fincke-Pohst enumeration over the Gram decomposition of one basis.
class LatticeEnumerator {
 public:
  explicit LatticeEnumerator(const LatticeBasis& b);

  std::size_t rank() const { return basis_.cols(); }
  std::size_t ambient_dim() const { return basis_.rows(); }

  LatticeVector shortest() const;
  // norm2 is the full squared distance from x, including the part of x
  // orthogonal to the span.
  LatticeVector closest(const QVector& x) const;
  // Squared distance only; same value as closest(x).norm2.
  Rational distance2(const QVector& x) const;
  // Coefficient vectors c with |B c - x|^2 <= radius2.
  std::vector<QVector> ball(const QVector& x, const Rational& radius2) const;

 private:
  // Coordinates y of the projection of x onto the span, and |x_perp|^2.
  std::pair<QVector, Rational> project(const QVector& x) const;
  QMatrix basis_;
  QMatrix gram_inverse_times_bt_;
  std::vector<Rational> q_;  // Gram-Schmidt squared norms
  QMatrix mu_;               // unit upper triangular coefficients
};

LatticeVector shortest_vector(const LatticeBasis& b);
LatticeVector closest_vector(const LatticeBasis& b, const QVector& x);
Rational covering_radius_upper(const LatticeBasis& b, const Rational& grid_step);

}  // namespace chabauty
