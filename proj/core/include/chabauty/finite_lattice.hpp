#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "chabauty/rational.hpp"
#include "chabauty/report.hpp"

namespace chabauty {

using Element = std::vector<std::int64_t>;

// Z/d_1 x ... x Z/d_r with d_1 | d_2 | ... | d_r, each d_i >= 2.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors);

  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::int64_t order() const;
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  Element reduce(Element x) const;
  // Mixed-radix index in [0, order).
  std::int64_t index_of(const Element& x) const;
  Element element(std::int64_t index) const;

  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  std::vector<std::int64_t> factors_;
};

// Every isomorphism type of abelian group of order n, by invariant factors,
// in lexicographic order.
std::vector<FiniteAbelianGroup> abelian_groups_of_order(std::int64_t n);

// Subgroup H stored as the lattice L with D Z^r <= L <= Z^r, H = L / D Z^r,
// in lower-triangular column HNF: column k has pivot h_kk | d_k on the
// diagonal and entry (i, k), i > k, reduced into [0, h_ii).
class FinSubgroup {
 public:
  static FinSubgroup from_generators(const FiniteAbelianGroup& g, const std::vector<Element>& gens);
  // Trusted canonical form, row-major r x r.
  static FinSubgroup from_hnf(const FiniteAbelianGroup& g, std::vector<std::int64_t> hnf);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::int64_t>& hnf() const { return hnf_; }
  std::int64_t entry(std::size_t row, std::size_t col) const { return hnf_[row * group_.rank() + col]; }
  std::int64_t order() const;
  // Columns reduced mod the invariant factors, zero columns dropped.
  std::vector<Element> generators() const;
  bool contains(const Element& x) const;
  // Sorted element indices.
  std::vector<std::int64_t> elements() const;

  bool operator==(const FinSubgroup& o) const { return hnf_ == o.hnf_ && group_ == o.group_; }
  std::strong_ordering operator<=>(const FinSubgroup& o) const { return hnf_ <=> o.hnf_; }

 private:
  FiniteAbelianGroup group_;
  std::vector<std::int64_t> hnf_;
};

inline constexpr std::int64_t kDefaultOrderCap = 10000;
inline constexpr std::size_t kDefaultSubgroupCap = 2000000;

std::vector<FinSubgroup> enumerate_subgroups(const FiniteAbelianGroup& g, std::int64_t order_cap = kDefaultOrderCap,
                                             std::size_t subgroup_cap = kDefaultSubgroupCap);

// <x, chi> = sum x_i chi_i / d_i mod 1, in [0, 1).
Rational character_pairing(const FiniteAbelianGroup& g, const Element& x, const Element& chi);

FinSubgroup orthogonal_fin(const FinSubgroup& h);

VerificationReport verify_duality_fin(const FiniteAbelianGroup& g, std::int64_t order_cap = kDefaultOrderCap);

}  // namespace chabauty
