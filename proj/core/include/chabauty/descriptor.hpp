#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chabauty {

enum class AtomKind { RealLine, IntegerZ, Torus1, Cyclic, AdicZ, Prufer, QpField };

struct Atom {
  AtomKind kind = AtomKind::RealLine;
  std::uint64_t parameter = 0;  // n for Cyclic/AdicZ/Prufer, p for QpField

  static Atom real_line() { return {AtomKind::RealLine, 0}; }
  static Atom integers() { return {AtomKind::IntegerZ, 0}; }
  static Atom torus() { return {AtomKind::Torus1, 0}; }
  static Atom cyclic(std::uint64_t n) { return {AtomKind::Cyclic, n}; }
  static Atom adic(std::uint64_t n) { return {AtomKind::AdicZ, n}; }
  static Atom prufer(std::uint64_t n) { return {AtomKind::Prufer, n}; }
  static Atom qp(std::uint64_t p) { return {AtomKind::QpField, p}; }

  auto operator<=>(const Atom&) const = default;
};

std::string to_string(const Atom& atom);

// Finite product of atoms in canonical order. AdicZ(n) and Prufer(n) are
// split over the distinct primes of n.
class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  explicit GroupDescriptor(std::vector<Atom> atoms);

  // Grammar: tokens R, Z, T, Z/<n>, Zp<n>, Pruf<n>, Qp<p> joined by '*'.
  // The empty string is the trivial group.
  static GroupDescriptor parse(std::string_view text);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t count(AtomKind kind) const;
  std::vector<std::uint64_t> parameters(AtomKind kind) const;
  bool only(std::initializer_list<AtomKind> kinds) const;
  bool trivial() const { return atoms_.empty(); }
  std::string to_string() const;

  bool operator==(const GroupDescriptor&) const = default;

 private:
  std::vector<Atom> atoms_;
};

struct InvariantSummary {
  std::uint64_t r_invariant = 0;
  std::uint64_t tdim = 0;
  std::uint64_t tdim_dual = 0;
  bool compact = false;
  bool discrete = false;
  bool elliptic = false;
  bool totally_disconnected = false;
  bool lie = false;
  bool compactly_generated = false;
  bool metacircular = true;
  bool finitely_generated = false;
  bool adic = false;
  bool artinian = false;
  bool torus = false;
};

GroupDescriptor dual_descriptor(const GroupDescriptor& g);
InvariantSummary invariants(const GroupDescriptor& g);
std::uint64_t sdim(const GroupDescriptor& g);
GroupDescriptor g0_descriptor(const GroupDescriptor& g);
GroupDescriptor elliptic_descriptor(const GroupDescriptor& g);

enum class Connectivity { TotallyDisconnected, Connected, DisconnectedNotTotally };

struct ConnectivityVerdict {
  Connectivity kind = Connectivity::TotallyDisconnected;
  bool path_connected = false;  // meaningful for Connected only
  std::string case_label;

  bool operator==(const ConnectivityVerdict&) const = default;
};

ConnectivityVerdict classify_connectivity(const GroupDescriptor& g);

enum class ComponentCardinality { SinglePoint, Finite, CountablyInfinite, Uncountable };

struct CardinalityVerdict {
  ComponentCardinality kind = ComponentCardinality::SinglePoint;
  std::string case_label;
  // Set when the verdict follows only from no listed countable case applying.
  bool theorem_boundary = false;
};

CardinalityVerdict component_cardinality(const GroupDescriptor& g);

// h is the type of the subgroup H, q the type of G/H.
bool is_isolated(const GroupDescriptor& h, const GroupDescriptor& q);

GroupDescriptor hom_compact_descriptor(std::uint64_t r, std::uint64_t s);

const char* to_string(Connectivity c);
const char* to_string(ComponentCardinality c);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace chabauty
