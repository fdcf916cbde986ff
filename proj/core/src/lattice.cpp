#include "chabauty/lattice.hpp"

#include <algorithm>

#include "chabauty/error.hpp"
#include "chabauty/linalg.hpp"

namespace chabauty {

LatticeBasis::LatticeBasis(QMatrix basis) : basis_(std::move(basis)) {
  if (chabauty::rank(basis_) != basis_.cols()) {
    throw PreconditionError("lattice basis columns are linearly dependent");
  }
}

LatticeBasis LatticeBasis::from_generators(const QMatrix& generators) {
  return LatticeBasis(hnf(generators));
}

bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
  return a.ambient_dim() == b.ambient_dim() && hnf(a.basis()) == hnf(b.basis());
}

LatticeBasis dual_lattice(const LatticeBasis& b) {
  if (b.rank() == 0) return b;
  const QMatrix& m = b.basis();
  auto gram_inv = inverse(m.transpose() * m);
  return LatticeBasis(m * *gram_inv);
}

namespace {

void gram_schmidt(const std::vector<QVector>& v, std::vector<QVector>& star, std::vector<Rational>& len2,
                  std::vector<std::vector<Rational>>& mu) {
  const std::size_t r = v.size();
  star.assign(r, {});
  len2.assign(r, 0);
  mu.assign(r, std::vector<Rational>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    star[i] = v[i];
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(v[i], star[j]) / len2[j];
      star[i] = star[i] - mu[i][j] * star[j];
    }
    len2[i] = norm2(star[i]);
  }
}

}  // namespace

LatticeBasis lll_reduce(const LatticeBasis& b) {
  const std::size_t r = b.rank();
  if (r < 2) return b;
  std::vector<QVector> v;
  for (std::size_t j = 0; j < r; ++j) v.push_back(b.basis().column(j));
  std::vector<QVector> star;
  std::vector<Rational> len2;
  std::vector<std::vector<Rational>> mu;
  gram_schmidt(v, star, len2, mu);
  const Rational lovasz(3, 4);
  std::size_t k = 1;
  while (k < r) {
    for (std::size_t jj = k; jj-- > 0;) {
      Integer q = round_nearest(mu[k][jj]);
      if (q == 0) continue;
      const Rational qr(q);
      v[k] = v[k] - qr * v[jj];
      for (std::size_t i = 0; i < jj; ++i) mu[k][i] -= qr * mu[jj][i];
      mu[k][jj] -= qr;
    }
    if (len2[k] >= (lovasz - mu[k][k - 1] * mu[k][k - 1]) * len2[k - 1]) {
      ++k;
    } else {
      std::swap(v[k], v[k - 1]);
      gram_schmidt(v, star, len2, mu);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return LatticeBasis(QMatrix::from_columns(b.ambient_dim(), v));
}

namespace {

// Visits every integer vector c with sum_i q_i (c_i - center_i(c))^2 <= bound.
// The visitor may lower `bound`; later candidates are pruned against it.
template <class Visit>
void fincke_pohst(const std::vector<Rational>& q, const QMatrix& mu, const QVector& y, Rational& bound,
                  Visit&& visit) {
  const std::size_t r = q.size();
  std::vector<Integer> c(r);
  if (r == 0) {
    if (bound >= 0) visit(c, Rational(0));
    return;
  }
  std::vector<Rational> partial(r + 1);
  auto level = [&](auto& self, std::size_t i) -> void {
    Rational center = y[i];
    for (std::size_t j = i + 1; j < r; ++j) {
      if (mu(i, j) != 0) center -= mu(i, j) * (Rational(c[j]) - y[j]);
    }
    Integer start = floor(center);
    auto try_value = [&](const Integer& k) {
      Rational diff = Rational(k) - center;
      Rational val = partial[i + 1] + q[i] * diff * diff;
      if (val > bound) return false;
      c[i] = k;
      partial[i] = val;
      if (i == 0) {
        visit(c, val);
      } else {
        self(self, i - 1);
      }
      return true;
    };
    for (Integer k = start;; --k) {
      if (!try_value(k)) break;
    }
    for (Integer k = start + 1;; ++k) {
      if (!try_value(k)) break;
    }
  };
  level(level, r - 1);
}

bool lex_less(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

QVector to_qvector(const std::vector<Integer>& c) {
  QVector out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  return out;
}

}  // namespace

LatticeEnumerator::LatticeEnumerator(const LatticeBasis& b) : basis_(b.basis()) {
  const std::size_t r = basis_.cols();
  QMatrix bt = basis_.transpose();
  QMatrix gram = bt * basis_;
  if (r > 0) gram_inverse_times_bt_ = *inverse(gram) * bt;
  q_.assign(r, 0);
  mu_ = QMatrix::identity(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      Rational s = gram(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= mu_(k, i) * mu_(k, j) * q_[k];
      if (j == i) {
        q_[i] = s;
      } else {
        mu_(i, j) = s / q_[i];
      }
    }
  }
}

std::pair<QVector, Rational> LatticeEnumerator::project(const QVector& x) const {
  if (x.size() != ambient_dim()) throw PreconditionError("point dimension mismatch");
  if (rank() == 0) return {QVector{}, norm2(x)};
  QVector y = gram_inverse_times_bt_ * x;
  Rational perp = norm2(x) - dot(x, basis_ * y);
  return {std::move(y), perp};
}

LatticeVector LatticeEnumerator::shortest() const {
  if (rank() == 0) throw PreconditionError("trivial lattice has no shortest vector");
  Rational bound = -1;
  for (std::size_t i = 0; i < rank(); ++i) {
    Rational len = norm2(basis_.column(i));
    if (bound < 0 || len < bound) bound = len;
  }
  std::vector<Integer> best;
  Rational best_norm = -1;
  QVector zero(rank());
  fincke_pohst(q_, mu_, zero, bound, [&](const std::vector<Integer>& c, const Rational& val) {
    bool nonzero = std::any_of(c.begin(), c.end(), [](const Integer& v) { return v != 0; });
    if (!nonzero) return;
    if (best_norm < 0 || val < best_norm || (val == best_norm && lex_less(c, best))) {
      best = c;
      best_norm = val;
      bound = val;
    }
  });
  LatticeVector out;
  out.coefficients = to_qvector(best);
  out.vector = basis_ * out.coefficients;
  out.norm2 = best_norm;
  return out;
}

LatticeVector LatticeEnumerator::closest(const QVector& x) const {
  auto [y, perp] = project(x);
  LatticeVector out;
  if (rank() == 0) {
    out.vector = QVector(ambient_dim());
    out.norm2 = perp;
    return out;
  }
  std::vector<Integer> guess(rank());
  for (std::size_t i = 0; i < rank(); ++i) guess[i] = round_nearest(y[i]);
  // Q(guess - y) through the triangular decomposition.
  Rational bound = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    Rational t = Rational(guess[i]) - y[i];
    for (std::size_t j = i + 1; j < rank(); ++j) t += mu_(i, j) * (Rational(guess[j]) - y[j]);
    bound += q_[i] * t * t;
  }
  std::vector<Integer> best = guess;
  Rational best_val = bound;
  fincke_pohst(q_, mu_, y, bound, [&](const std::vector<Integer>& c, const Rational& val) {
    if (val < best_val || (val == best_val && lex_less(c, best))) {
      best = c;
      best_val = val;
      bound = val;
    }
  });
  out.coefficients = to_qvector(best);
  out.vector = basis_ * out.coefficients;
  out.norm2 = best_val + perp;
  return out;
}

Rational LatticeEnumerator::distance2(const QVector& x) const {
  auto [y, perp] = project(x);
  if (rank() == 0) return perp;
  Rational bound = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    Rational t = Rational(round_nearest(y[i])) - y[i];
    for (std::size_t j = i + 1; j < rank(); ++j) t += mu_(i, j) * (Rational(round_nearest(y[j])) - y[j]);
    bound += q_[i] * t * t;
  }
  fincke_pohst(q_, mu_, y, bound, [&](const std::vector<Integer>&, const Rational& val) {
    if (val < bound) bound = val;
  });
  return bound + perp;
}

std::vector<QVector> LatticeEnumerator::ball(const QVector& x, const Rational& radius2) const {
  auto [y, perp] = project(x);
  std::vector<QVector> out;
  Rational bound = radius2 - perp;
  if (bound < 0) return out;
  if (rank() == 0) {
    out.emplace_back();
    return out;
  }
  fincke_pohst(q_, mu_, y, bound, [&](const std::vector<Integer>& c, const Rational&) {
    out.push_back(to_qvector(c));
  });
  std::sort(out.begin(), out.end());
  return out;
}

LatticeVector shortest_vector(const LatticeBasis& b) { return LatticeEnumerator(b).shortest(); }

LatticeVector closest_vector(const LatticeBasis& b, const QVector& x) {
  return LatticeEnumerator(b).closest(x);
}

Rational covering_radius_upper(const LatticeBasis& b, const Rational& grid_step) {
  if (grid_step <= 0) throw PreconditionError("grid step must be positive");
  if (!b.full_rank()) throw PreconditionError("covering radius requires full rank in span");
  const std::size_t d = b.ambient_dim();
  if (d == 0) return 0;
  // In column HNF the box prod [0, h_ii) is a fundamental domain.
  QMatrix h = hnf(b.basis());
  LatticeEnumerator en{LatticeBasis(h)};
  std::vector<Integer> counts(d);
  for (std::size_t i = 0; i < d; ++i) counts[i] = ceil(h(i, i) / grid_step);
  std::vector<Integer> k(d, 0);
  Rational worst = 0;
  QVector x(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) x[i] = grid_step * Rational(k[i]);
    Rational dist = en.distance2(x);
    if (dist > worst) worst = dist;
    std::size_t i = 0;
    while (i < d && k[i] == counts[i]) k[i++] = 0;
    if (i == d) break;
    ++k[i];
  }
  return sqrt_upper(worst) + sqrt_upper(Rational(d) * grid_step * grid_step / 4);
}

}  // namespace chabauty
