#include "chabauty/finite_lattice.hpp"

#include <algorithm>
#include <numeric>

#include "chabauty/error.hpp"
#include "chabauty/linalg.hpp"

namespace chabauty {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw PreconditionError("invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0) {
      throw PreconditionError("invariant factors must form a divisibility chain");
    }
  }
}

std::int64_t FiniteAbelianGroup::order() const {
  std::int64_t n = 1;
  for (auto d : factors_) n *= d;
  return n;
}

Element FiniteAbelianGroup::reduce(Element x) const {
  if (x.size() != rank()) throw PreconditionError("element rank mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], factors_[i]);
  return x;
}

std::int64_t FiniteAbelianGroup::index_of(const Element& x) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) idx = idx * factors_[i] + mod(x[i], factors_[i]);
  return idx;
}

Element FiniteAbelianGroup::element(std::int64_t index) const {
  Element x(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    x[i] = index % factors_[i];
    index /= factors_[i];
  }
  return x;
}

std::vector<FiniteAbelianGroup> abelian_groups_of_order(std::int64_t n) {
  if (n < 1) throw PreconditionError("group order must be positive");
  std::vector<std::pair<std::int64_t, int>> primes;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) primes.push_back({p, e});
  }
  if (m > 1) primes.push_back({m, 1});

  // Partitions of e as non-increasing part lists.
  auto partitions = [](int e) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto& self, int left, int max_part) -> void {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      for (int part = std::min(left, max_part); part >= 1; --part) {
        cur.push_back(part);
        self(self, left - part, part);
        cur.pop_back();
      }
    };
    rec(rec, e, e);
    return out;
  };

  std::vector<std::vector<std::int64_t>> results{{}};
  for (auto [p, e] : primes) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& base : results) {
      for (const auto& lambda : partitions(e)) {
        // base holds factors largest first.
        std::vector<std::int64_t> f = base;
        if (f.size() < lambda.size()) f.resize(lambda.size(), 1);
        for (std::size_t k = 0; k < lambda.size(); ++k) {
          for (int t = 0; t < lambda[k]; ++t) f[k] *= p;
        }
        next.push_back(std::move(f));
      }
    }
    results = std::move(next);
  }
  std::vector<FiniteAbelianGroup> groups;
  for (auto f : results) {
    std::reverse(f.begin(), f.end());
    groups.emplace_back(std::move(f));
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
    return a.invariant_factors() < b.invariant_factors();
  });
  return groups;
}

namespace {

// x in the lattice spanned by the triangular columns k0..r-1 of hnf?
// Coordinates before k0 must vanish.
bool triangular_member(const std::vector<std::int64_t>& hnf, std::size_t r, std::size_t k0, Element x) {
  for (std::size_t i = 0; i < k0; ++i) {
    if (x[i] != 0) return false;
  }
  for (std::size_t k = k0; k < r; ++k) {
    std::int64_t pivot = hnf[k * r + k];
    if (x[k] % pivot != 0) return false;
    std::int64_t c = x[k] / pivot;
    if (c == 0) continue;
    for (std::size_t i = k; i < r; ++i) x[i] -= c * hnf[i * r + k];
  }
  return true;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

std::vector<std::int64_t> canonical_from_generators(const FiniteAbelianGroup& g, const std::vector<Element>& gens) {
  const std::size_t r = g.rank();
  std::vector<QVector> cols;
  for (const auto& x : gens) {
    if (x.size() != r) throw PreconditionError("element rank mismatch");
    QVector v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = static_cast<long>(x[i]);
    cols.push_back(v);
  }
  for (std::size_t i = 0; i < r; ++i) {
    QVector v(r);
    v[i] = static_cast<long>(g.invariant_factors()[i]);
    cols.push_back(v);
  }
  QMatrix h = hnf(QMatrix::from_columns(r, cols));
  std::vector<std::int64_t> out(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) out[i * r + k] = h(i, k).get_num().get_si();
  }
  return out;
}

}  // namespace

FinSubgroup FinSubgroup::from_generators(const FiniteAbelianGroup& g, const std::vector<Element>& gens) {
  return from_hnf(g, canonical_from_generators(g, gens));
}

FinSubgroup FinSubgroup::from_hnf(const FiniteAbelianGroup& g, std::vector<std::int64_t> hnf) {
  if (hnf.size() != g.rank() * g.rank()) throw PreconditionError("subgroup matrix shape mismatch");
  FinSubgroup h;
  h.group_ = g;
  h.hnf_ = std::move(hnf);
  if (g.order() % h.order() != 0) throw PreconditionError("subgroup order does not divide group order");
  return h;
}

std::int64_t FinSubgroup::order() const {
  std::int64_t n = 1;
  for (std::size_t k = 0; k < group_.rank(); ++k) n *= group_.invariant_factors()[k] / entry(k, k);
  return n;
}

std::vector<Element> FinSubgroup::generators() const {
  std::vector<Element> out;
  const std::size_t r = group_.rank();
  for (std::size_t k = 0; k < r; ++k) {
    Element x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = entry(i, k);
    x = group_.reduce(x);
    if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) out.push_back(std::move(x));
  }
  return out;
}

bool FinSubgroup::contains(const Element& x) const {
  return triangular_member(hnf_, group_.rank(), 0, group_.reduce(x));
}

std::vector<std::int64_t> FinSubgroup::elements() const {
  const std::size_t r = group_.rank();
  std::vector<std::int64_t> counts(r);
  for (std::size_t k = 0; k < r; ++k) counts[k] = group_.invariant_factors()[k] / entry(k, k);
  std::vector<bool> hit(static_cast<std::size_t>(group_.order()), false);
  std::vector<std::int64_t> c(r, 0);
  while (true) {
    Element x(r, 0);
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t i = k; i < r; ++i) x[i] += c[k] * entry(i, k);
    }
    hit[static_cast<std::size_t>(group_.index_of(x))] = true;
    std::size_t k = 0;
    while (k < r && c[k] + 1 == counts[k]) c[k++] = 0;
    if (k == r) break;
    ++c[k];
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < hit.size(); ++i) {
    if (hit[i]) out.push_back(static_cast<std::int64_t>(i));
  }
  if (static_cast<std::int64_t>(out.size()) != order()) throw PreconditionError("subgroup element count mismatch");
  return out;
}

std::vector<FinSubgroup> enumerate_subgroups(const FiniteAbelianGroup& g, std::int64_t order_cap,
                                             std::size_t subgroup_cap) {
  if (g.order() > order_cap) {
    throw ResourceError("group order " + std::to_string(g.order()) + " exceeds cap " + std::to_string(order_cap));
  }
  const std::size_t r = g.rank();
  const auto& d = g.invariant_factors();
  std::vector<FinSubgroup> out;
  std::vector<std::int64_t> hnf(r * r, 0);

  // Columns are chosen from the last to the first; after choosing column k
  // the lattice spanned by columns k..r-1 must contain d_i e_i for i >= k.
  auto rec = [&](auto& self, std::size_t k) -> void {
    if (k == 0) {
      if (out.size() >= subgroup_cap) throw ResourceError("subgroup count exceeds cap");
      out.push_back(FinSubgroup::from_hnf(g, hnf));
      return;
    }
    const std::size_t col = k - 1;
    for (std::int64_t pivot : divisors(d[col])) {
      // Below-diagonal entries range over [0, h_ii).
      std::vector<std::int64_t> tail(r - k, 0);
      while (true) {
        for (std::size_t i = 0; i < r; ++i) hnf[i * r + col] = 0;
        hnf[col * r + col] = pivot;
        for (std::size_t i = k; i < r; ++i) hnf[i * r + col] = tail[i - k];
        Element probe(r, 0);
        const std::int64_t mult = d[col] / pivot;
        for (std::size_t i = k; i < r; ++i) probe[i] = mult * tail[i - k];
        if (triangular_member(hnf, r, k, probe)) self(self, col);
        std::size_t i = 0;
        while (i < tail.size() && tail[i] + 1 == hnf[(k + i) * r + (k + i)]) tail[i++] = 0;
        if (i == tail.size()) break;
        ++tail[i];
      }
      for (std::size_t i = 0; i < r; ++i) hnf[i * r + col] = 0;
    }
  };
  rec(rec, r);
  std::sort(out.begin(), out.end());
  return out;
}

Rational character_pairing(const FiniteAbelianGroup& g, const Element& x, const Element& chi) {
  if (x.size() != g.rank() || chi.size() != g.rank()) throw PreconditionError("element rank mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    s += Rational(static_cast<long>(mod(x[i], g.invariant_factors()[i]) * mod(chi[i], g.invariant_factors()[i])),
                  static_cast<unsigned long>(g.invariant_factors()[i]));
  }
  s.canonicalize();
  return s - Rational(floor(s));
}

FinSubgroup orthogonal_fin(const FinSubgroup& h) {
  const FiniteAbelianGroup& g = h.group();
  const std::size_t r = g.rank();
  if (r == 0) return h;
  const std::int64_t e = g.exponent();
  // chi is orthogonal iff C chi = 0 mod e with C = G^T diag(e / d_i).
  QMatrix c(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      c(k, i) = static_cast<long>(h.entry(i, k) * (e / g.invariant_factors()[i]));
    }
  }
  SmithForm sf = snf(c);
  std::vector<Element> gens;
  for (std::size_t k = 0; k < r; ++k) {
    std::int64_t s = sf.diagonal[k].get_num().get_si();
    std::int64_t scale = e / std::gcd(s, e);
    Element x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = sf.right(i, k).get_num().get_si() * scale;
    gens.push_back(std::move(x));
  }
  return FinSubgroup::from_generators(g, gens);
}

namespace {

struct Bitset {
  std::vector<std::uint64_t> words;
  explicit Bitset(std::size_t n) : words((n + 63) / 64, 0) {}
  void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if ((words[i] & ~o.words[i]) != 0) return false;
    }
    return true;
  }
};

std::string describe(const FinSubgroup& h) {
  std::string s = "[";
  for (std::size_t i = 0; i < h.hnf().size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(h.hnf()[i]);
  }
  return s + "]";
}

}  // namespace

VerificationReport verify_duality_fin(const FiniteAbelianGroup& g, std::int64_t order_cap) {
  nlohmann::json params = {{"invariant_factors", g.invariant_factors()}, {"order_cap", order_cap}};
  VerificationReport report("finite_duality", 0, params);
  const auto subs = enumerate_subgroups(g, order_cap);
  // The dual presentation has the same invariant factors.
  const auto dual_subs = enumerate_subgroups(FiniteAbelianGroup(g.invariant_factors()), order_cap);
  const std::size_t n = subs.size();
  constexpr std::size_t kMaxExamples = 20;

  std::vector<std::size_t> image(n);
  nlohmann::json involution_bad = nlohmann::json::array();
  nlohmann::json order_bad = nlohmann::json::array();
  nlohmann::json image_bad = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    FinSubgroup o = orthogonal_fin(subs[i]);
    if (subs[i].order() * o.order() != g.order() && order_bad.size() < kMaxExamples) {
      order_bad.push_back(describe(subs[i]));
    }
    if (!(orthogonal_fin(o) == subs[i]) && involution_bad.size() < kMaxExamples) {
      involution_bad.push_back(describe(subs[i]));
    }
    auto it = std::lower_bound(dual_subs.begin(), dual_subs.end(), o);
    if (it == dual_subs.end() || !(*it == o)) {
      if (image_bad.size() < kMaxExamples) image_bad.push_back(describe(subs[i]));
      image[i] = n;
    } else {
      image[i] = static_cast<std::size_t>(it - dual_subs.begin());
    }
  }
  std::vector<std::size_t> sorted_image = image;
  std::sort(sorted_image.begin(), sorted_image.end());
  bool bijective = dual_subs.size() == n && std::adjacent_find(sorted_image.begin(), sorted_image.end()) ==
                                                 sorted_image.end() && (n == 0 || sorted_image.back() < n);

  std::vector<Bitset> primal, dual;
  for (const auto& h : subs) {
    Bitset b(static_cast<std::size_t>(g.order()));
    for (auto idx : h.elements()) b.set(static_cast<std::size_t>(idx));
    primal.push_back(std::move(b));
  }
  for (const auto& h : dual_subs) {
    Bitset b(static_cast<std::size_t>(g.order()));
    for (auto idx : h.elements()) b.set(static_cast<std::size_t>(idx));
    dual.push_back(std::move(b));
  }
  std::size_t inclusion_failures = 0;
  nlohmann::json inclusion_bad = nlohmann::json::array();
  for (std::size_t i = 0; i < n && bijective; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool forward = primal[i].subset_of(primal[j]);
      bool backward = dual[image[j]].subset_of(dual[image[i]]);
      if (forward != backward) {
        ++inclusion_failures;
        if (inclusion_bad.size() < kMaxExamples) inclusion_bad.push_back({describe(subs[i]), describe(subs[j])});
      }
    }
  }

  auto verdict = [](bool ok) { return ok ? Verdict::Pass : Verdict::Fail; };
  report.add({"order product", verdict(order_bad.empty()), {{"violations", order_bad}}});
  report.add({"involution", verdict(involution_bad.empty()), {{"violations", involution_bad}}});
  report.add({"inclusion reversal", verdict(bijective && inclusion_failures == 0),
              {{"violations", inclusion_bad}, {"failures", inclusion_failures}}});
  report.add({"subgroup count", verdict(bijective && image_bad.empty()),
              {{"count", n}, {"dual_count", dual_subs.size()}, {"unmatched", image_bad}}});
  return report;
}

}  // namespace chabauty
