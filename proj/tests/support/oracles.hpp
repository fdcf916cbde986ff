#pragma once

// Brute-force reference computations used as independent oracles.

#include <cstdint>
#include <vector>

#include "chabauty/finite_lattice.hpp"
#include "chabauty/qmatrix.hpp"

namespace oracle {

using chabauty::QMatrix;
using chabauty::QVector;
using chabauty::Rational;

// p/q in lowest terms; mpq_class(p, q) does not canonicalize.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Minimal squared norm over nonzero integer combinations with |c_i| <= bound.
Rational brute_shortest(const QMatrix& basis, int bound);

// Minimal squared distance from x over integer combinations with |c_i| <= bound.
Rational brute_closest(const QMatrix& basis, const QVector& x, int bound);

// Is x an integer combination of the columns with |c_i| <= bound?
bool brute_in_span(const QMatrix& basis, const QVector& x, int bound);

// d_k = gcd of all k x k minors divided by that of (k-1) x (k-1) minors.
std::vector<std::int64_t> determinantal_invariants(const std::vector<std::vector<std::int64_t>>& rows);

// Subgroups of a finite abelian group by closure: every subgroup is reached
// by adjoining one element at a time starting from {0}.
std::size_t closure_subgroup_count(const chabauty::FiniteAbelianGroup& g);

// Orthogonal of a subgroup given by its element indices, by checking every
// character against every element.
std::vector<std::int64_t> brute_orthogonal(const chabauty::FiniteAbelianGroup& g,
                                           const std::vector<std::int64_t>& elements);

// sup over x >= 0 of min(x, 1/(1+x)) on a fine grid.
double grid_sup_min_weight(double step);

}  // namespace oracle
