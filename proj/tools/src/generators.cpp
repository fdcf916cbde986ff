#include "chabauty/cli/generators.hpp"

#include "chabauty/linalg.hpp"

namespace chabauty::cli {

ElementarySubgroup random_subgroup(TrialRng& rng, const AmbientGroup& g, std::size_t max_cont,
                                   std::size_t max_disc) {
  const std::size_t n = g.dim();
  const auto n_cont = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_cont)));
  const auto n_disc = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_disc)));
  std::vector<QVector> cont, disc;
  for (std::size_t j = 0; j < n_cont && g.a + g.c > 0; ++j) {
    QVector v(n);
    for (std::size_t i = 0; i < g.a; ++i) v[i] = rng.rational(3, 3);
    for (std::size_t i = 0; i < g.c; ++i) v[g.t_offset() + i] = rng.rational(3, 3);
    cont.push_back(v);
  }
  for (std::size_t j = 0; j < n_disc; ++j) {
    QVector v(n);
    for (std::size_t i = 0; i < g.a; ++i) v[i] = rng.rational(4, 4);
    for (std::size_t i = 0; i < g.b; ++i) v[g.z_offset() + i] = rng.uniform(-3, 3);
    for (std::size_t i = 0; i < g.c; ++i) v[g.t_offset() + i] = rng.rational(4, 4);
    for (std::size_t i = 0; i < g.f(); ++i) v[g.f_offset() + i] = rng.uniform(0, g.finite[i] - 1);
    disc.push_back(v);
  }
  return canonicalize(g, QMatrix::from_columns(n, cont), QMatrix::from_columns(n, disc));
}

LatticeBasis random_integer_lattice(TrialRng& rng, std::size_t d, std::int64_t lo, std::int64_t hi) {
  while (true) {
    QMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.uniform(lo, hi);
    }
    if (determinant(m) != 0) return LatticeBasis(m);
  }
}

QMatrix random_direction(TrialRng& rng, std::size_t d) {
  QMatrix e(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) e(i, j) = Rational(static_cast<long>(rng.uniform(-3, 3)), 32);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) e(i, j).canonicalize();
  }
  return e;
}

}  // namespace chabauty::cli
