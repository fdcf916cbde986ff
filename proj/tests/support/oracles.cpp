#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace oracle {

namespace {

template <class Visit>
void for_each_coefficients(std::size_t r, int bound, Visit&& visit) {
  std::vector<int> c(r, -bound);
  if (r == 0) {
    visit(c);
    return;
  }
  while (true) {
    visit(c);
    std::size_t i = 0;
    while (i < r && c[i] == bound) c[i++] = -bound;
    if (i == r) return;
    ++c[i];
  }
}

QVector combine(const QMatrix& basis, const std::vector<int>& c) {
  QVector v(basis.rows());
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t i = 0; i < basis.rows(); ++i) v[i] += basis(i, j) * c[j];
  }
  return v;
}

Rational dist2(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::int64_t det(std::vector<std::vector<std::int64_t>> m) {
  // Laplace expansion; inputs are tiny.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(m[i][k]);
      }
      minor.push_back(row);
    }
    std::int64_t sign = (j % 2 == 0) ? 1 : -1;
    total += sign * m[0][j] * det(minor);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Rational brute_shortest(const QMatrix& basis, int bound) {
  Rational best = -1;
  for_each_coefficients(basis.cols(), bound, [&](const std::vector<int>& c) {
    if (std::all_of(c.begin(), c.end(), [](int v) { return v == 0; })) return;
    Rational n = dist2(combine(basis, c), QVector(basis.rows()));
    if (best < 0 || n < best) best = n;
  });
  return best;
}

Rational brute_closest(const QMatrix& basis, const QVector& x, int bound) {
  Rational best = -1;
  for_each_coefficients(basis.cols(), bound, [&](const std::vector<int>& c) {
    Rational n = dist2(combine(basis, c), x);
    if (best < 0 || n < best) best = n;
  });
  return best;
}

bool brute_in_span(const QMatrix& basis, const QVector& x, int bound) {
  bool found = false;
  for_each_coefficients(basis.cols(), bound, [&](const std::vector<int>& c) {
    if (!found && combine(basis, c) == x) found = true;
  });
  return found;
}

std::vector<std::int64_t> determinantal_invariants(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows[0].size();
  std::vector<std::int64_t> divisors{1};
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m, k, 0, cur, rs);
    subsets(n, k, 0, cur, cs);
    std::int64_t g = 0;
    for (const auto& r : rs) {
      for (const auto& c : cs) {
        std::vector<std::vector<std::int64_t>> sub;
        for (auto i : r) {
          std::vector<std::int64_t> row;
          for (auto j : c) row.push_back(rows[i][j]);
          sub.push_back(row);
        }
        g = std::gcd(g, det(sub));
      }
    }
    divisors.push_back(std::abs(g));
  }
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; k < divisors.size(); ++k) {
    out.push_back(divisors[k - 1] == 0 ? 0 : divisors[k] / divisors[k - 1]);
  }
  return out;
}

std::size_t closure_subgroup_count(const chabauty::FiniteAbelianGroup& g) {
  const std::int64_t order = g.order();
  auto add = [&](std::int64_t a, std::int64_t b) {
    auto x = g.element(a);
    auto y = g.element(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return g.index_of(x);
  };
  auto close = [&](std::vector<bool> set) {
    std::vector<std::int64_t> frontier;
    for (std::int64_t i = 0; i < order; ++i) {
      if (set[static_cast<std::size_t>(i)]) frontier.push_back(i);
    }
    std::vector<std::int64_t> members = frontier;
    while (!frontier.empty()) {
      std::vector<std::int64_t> next;
      for (auto a : frontier) {
        for (auto b : std::vector<std::int64_t>(members)) {
          auto s = add(a, b);
          if (!set[static_cast<std::size_t>(s)]) {
            set[static_cast<std::size_t>(s)] = true;
            next.push_back(s);
            members.push_back(s);
          }
        }
      }
      frontier = std::move(next);
    }
    return set;
  };
  std::vector<bool> zero(static_cast<std::size_t>(order), false);
  zero[0] = true;
  std::set<std::vector<bool>> seen{zero};
  std::vector<std::vector<bool>> queue{zero};
  while (!queue.empty()) {
    auto s = queue.back();
    queue.pop_back();
    for (std::int64_t x = 0; x < order; ++x) {
      if (s[static_cast<std::size_t>(x)]) continue;
      auto t = s;
      t[static_cast<std::size_t>(x)] = true;
      t = close(t);
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  return seen.size();
}

std::vector<std::int64_t> brute_orthogonal(const chabauty::FiniteAbelianGroup& g,
                                           const std::vector<std::int64_t>& elements) {
  std::vector<std::int64_t> out;
  for (std::int64_t chi = 0; chi < g.order(); ++chi) {
    bool kills = true;
    for (auto x : elements) {
      if (chabauty::character_pairing(g, g.element(x), g.element(chi)) != 0) {
        kills = false;
        break;
      }
    }
    if (kills) out.push_back(chi);
  }
  return out;
}

double grid_sup_min_weight(double step) {
  double best = 0;
  for (double x = 0; x <= 10; x += step) best = std::max(best, std::min(x, 1 / (1 + x)));
  return best;
}

}  // namespace oracle
