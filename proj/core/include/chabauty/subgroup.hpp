#pragma once

#include <cstdint>
#include <vector>

#include "chabauty/descriptor.hpp"
#include "chabauty/lattice.hpp"
#include "chabauty/qmatrix.hpp"

namespace chabauty {

// G = R^a x Z^b x T^c x (+) Z/n_i.
struct AmbientGroup {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
  std::vector<std::int64_t> finite;

  AmbientGroup() = default;
  AmbientGroup(std::size_t a_, std::size_t b_, std::size_t c_, std::vector<std::int64_t> finite_ = {});

  std::size_t f() const { return finite.size(); }
  // Coordinates of the covering space: R-block, Z-block, T-block, finite.
  std::size_t dim() const { return a + b + c + finite.size(); }
  std::size_t z_offset() const { return a; }
  std::size_t t_offset() const { return a + b; }
  std::size_t f_offset() const { return a + b + c; }

  // a' = a, b' = c, c' = b, same finite orders.
  AmbientGroup dual() const;
  GroupDescriptor descriptor() const;

  bool operator==(const AmbientGroup&) const = default;
};

// Closed subgroup H <= G stored as its preimage V + Lambda in the covering
// space. Internally a finite coordinate k in Z/n is the rational k/n, so the
// covering lattice is spanned by the unit vectors of the T-block and the
// finite block, and both are always contained in the stored lattice.
class ElementarySubgroup {
 public:
  const AmbientGroup& ambient() const { return ambient_; }
  // Internal coordinates.
  const QMatrix& subspace() const { return subspace_; }
  const QMatrix& lattice() const { return lattice_; }
  std::size_t dimension() const { return subspace_.cols(); }

  // External coordinates: finite entries are residues mod n_i. Lattice
  // columns whose only content is a multiple of a finite unit are omitted.
  QMatrix cont_gens() const;
  QMatrix disc_gens() const;

  bool operator==(const ElementarySubgroup&) const = default;

  // Both generator sets in internal coordinates; the covering lattice is
  // added and the canonical form computed.
  static ElementarySubgroup from_internal(const AmbientGroup& ambient, const QMatrix& cont,
                                          const QMatrix& disc);

 private:
  AmbientGroup ambient_;
  QMatrix subspace_;
  QMatrix lattice_;
};

ElementarySubgroup canonicalize(const AmbientGroup& ambient, const QMatrix& cont, const QMatrix& disc);
ElementarySubgroup trivial_subgroup(const AmbientGroup& ambient);
ElementarySubgroup full_subgroup(const AmbientGroup& ambient);

QVector to_internal(const AmbientGroup& ambient, const QVector& external);
QVector to_external(const AmbientGroup& ambient, const QVector& internal);

bool member(const ElementarySubgroup& h, const QVector& x);
// Generators of h lie in k.
bool contains(const ElementarySubgroup& k, const ElementarySubgroup& h);

ElementarySubgroup sum(const ElementarySubgroup& h1, const ElementarySubgroup& h2);
ElementarySubgroup intersect(const ElementarySubgroup& h1, const ElementarySubgroup& h2);
ElementarySubgroup orthogonal(const ElementarySubgroup& h);

GroupDescriptor quotient_descriptor(const AmbientGroup& g, const ElementarySubgroup& h);
// Isomorphism type of H itself.
GroupDescriptor subgroup_descriptor(const ElementarySubgroup& h);
// Embedded isolation test from the types of H and G/H.
bool is_isolated(const ElementarySubgroup& h);

enum class NaturalMapKind { RestrictOpen, ProjectCompact };

struct NaturalMapSpec {
  NaturalMapKind kind;
  ElementarySubgroup parameter;
};

bool is_open(const ElementarySubgroup& h);
bool is_compact(const ElementarySubgroup& h);
ElementarySubgroup apply_natural_map(const NaturalMapSpec& spec, const ElementarySubgroup& h);

ElementarySubgroup tau_scale(const ElementarySubgroup& h, const Rational& lam);
ElementarySubgroup pathbase_limit(const ElementarySubgroup& h);
ElementarySubgroup circle_path(std::int64_t n, const Rational& lam);
ElementarySubgroup perturb_sequence(const LatticeBasis& gamma, const QMatrix& direction, std::int64_t n);
// Lattice gamma as a subgroup of R^d.
ElementarySubgroup lattice_subgroup(const LatticeBasis& gamma);
// A*h for h in R^d; throws when A is singular.
ElementarySubgroup apply_linear(const QMatrix& a, const ElementarySubgroup& h);

std::uint64_t component_of(const AmbientGroup& g, const ElementarySubgroup& h);

}  // namespace chabauty
