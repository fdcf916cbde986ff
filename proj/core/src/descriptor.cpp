#include "chabauty/descriptor.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>

#include "chabauty/error.hpp"

namespace chabauty {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::string to_string(const Atom& atom) {
  const std::string p = std::to_string(atom.parameter);
  switch (atom.kind) {
    case AtomKind::RealLine:
      return "R";
    case AtomKind::IntegerZ:
      return "Z";
    case AtomKind::Torus1:
      return "T";
    case AtomKind::Cyclic:
      return "Z/" + p;
    case AtomKind::AdicZ:
      return "Zp" + p;
    case AtomKind::Prufer:
      return "Pruf" + p;
    case AtomKind::QpField:
      return "Qp" + p;
  }
  return "?";
}

GroupDescriptor::GroupDescriptor(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    switch (a.kind) {
      case AtomKind::Cyclic:
        if (a.parameter < 2) throw PreconditionError("Z/n requires n >= 2");
        atoms_.push_back(a);
        break;
      case AtomKind::AdicZ:
      case AtomKind::Prufer:
        if (a.parameter < 2) throw PreconditionError(::chabauty::to_string(a) + " requires n >= 2");
        for (auto p : prime_divisors(a.parameter)) atoms_.push_back({a.kind, p});
        break;
      case AtomKind::QpField:
        if (!is_prime(a.parameter)) throw PreconditionError("Qp requires a prime");
        atoms_.push_back(a);
        break;
      default:
        atoms_.push_back({a.kind, 0});
        break;
    }
  }
  std::sort(atoms_.begin(), atoms_.end());
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_parameter(std::string_view digits, std::string_view token) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("bad descriptor token '" + std::string(token) + "'");
  }
  return v;
}

Atom parse_atom(std::string_view token) {
  if (token == "R") return Atom::real_line();
  if (token == "Z") return Atom::integers();
  if (token == "T") return Atom::torus();
  auto with_prefix = [&](std::string_view prefix, AtomKind kind) -> std::optional<Atom> {
    if (token.substr(0, prefix.size()) != prefix) return std::nullopt;
    return Atom{kind, parse_parameter(token.substr(prefix.size()), token)};
  };
  if (auto a = with_prefix("Z/", AtomKind::Cyclic)) return *a;
  if (auto a = with_prefix("Zp", AtomKind::AdicZ)) return *a;
  if (auto a = with_prefix("Pruf", AtomKind::Prufer)) return *a;
  if (auto a = with_prefix("Qp", AtomKind::QpField)) return *a;
  throw ParseError("bad descriptor token '" + std::string(token) + "'");
}

bool pairwise_distinct(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  std::string_view rest = trim(text);
  std::vector<Atom> atoms;
  if (rest.empty()) return GroupDescriptor();
  while (true) {
    auto star = rest.find('*');
    std::string_view token = trim(rest.substr(0, star));
    if (token.empty()) throw ParseError("empty factor in descriptor '" + std::string(text) + "'");
    Atom atom = parse_atom(token);
    try {
      atoms.push_back(atom);
      GroupDescriptor check({atom});
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
    if (star == std::string_view::npos) break;
    rest = rest.substr(star + 1);
  }
  return GroupDescriptor(std::move(atoms));
}

std::size_t GroupDescriptor::count(AtomKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(atoms_.begin(), atoms_.end(), [&](const Atom& a) { return a.kind == kind; }));
}

std::vector<std::uint64_t> GroupDescriptor::parameters(AtomKind kind) const {
  std::vector<std::uint64_t> out;
  for (const Atom& a : atoms_) {
    if (a.kind == kind) out.push_back(a.parameter);
  }
  return out;
}

bool GroupDescriptor::only(std::initializer_list<AtomKind> kinds) const {
  return std::all_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) {
    return std::find(kinds.begin(), kinds.end(), a.kind) != kinds.end();
  });
}

std::string GroupDescriptor::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i > 0) out += '*';
    out += ::chabauty::to_string(atoms_[i]);
  }
  return out;
}

GroupDescriptor dual_descriptor(const GroupDescriptor& g) {
  std::vector<Atom> out;
  for (Atom a : g.atoms()) {
    switch (a.kind) {
      case AtomKind::IntegerZ:
        a.kind = AtomKind::Torus1;
        break;
      case AtomKind::Torus1:
        a.kind = AtomKind::IntegerZ;
        break;
      case AtomKind::AdicZ:
        a.kind = AtomKind::Prufer;
        break;
      case AtomKind::Prufer:
        a.kind = AtomKind::AdicZ;
        break;
      default:
        break;
    }
    out.push_back(a);
  }
  return GroupDescriptor(std::move(out));
}

InvariantSummary invariants(const GroupDescriptor& g) {
  using K = AtomKind;
  InvariantSummary s;
  const auto reals = g.count(K::RealLine);
  s.r_invariant = reals;
  s.tdim = reals + g.count(K::Torus1);
  s.tdim_dual = reals + g.count(K::IntegerZ);
  s.compact = g.only({K::Torus1, K::Cyclic, K::AdicZ});
  s.discrete = g.only({K::IntegerZ, K::Cyclic, K::Prufer});
  s.elliptic = reals == 0 && g.count(K::IntegerZ) == 0;
  s.totally_disconnected = reals == 0 && g.count(K::Torus1) == 0;
  s.lie = g.only({K::RealLine, K::IntegerZ, K::Torus1, K::Cyclic, K::Prufer});
  s.compactly_generated = g.only({K::RealLine, K::IntegerZ, K::Torus1, K::Cyclic, K::AdicZ});
  s.metacircular = true;
  s.finitely_generated = g.only({K::IntegerZ, K::Cyclic});
  s.adic = g.only({K::AdicZ, K::Cyclic});
  s.artinian = g.only({K::Prufer, K::Cyclic});
  s.torus = g.only({K::Torus1});
  return s;
}

std::uint64_t sdim(const GroupDescriptor& g) {
  auto s = invariants(g);
  return s.tdim * s.tdim_dual;
}

GroupDescriptor g0_descriptor(const GroupDescriptor& g) {
  std::vector<Atom> out;
  for (const Atom& a : g.atoms()) {
    if (a.kind == AtomKind::RealLine || a.kind == AtomKind::Torus1) out.push_back(a);
  }
  return GroupDescriptor(std::move(out));
}

GroupDescriptor elliptic_descriptor(const GroupDescriptor& g) {
  std::vector<Atom> out;
  for (const Atom& a : g.atoms()) {
    if (a.kind != AtomKind::RealLine && a.kind != AtomKind::IntegerZ) out.push_back(a);
  }
  return GroupDescriptor(std::move(out));
}

ConnectivityVerdict classify_connectivity(const GroupDescriptor& g) {
  auto s = invariants(g);
  if (s.elliptic || s.totally_disconnected) {
    return {Connectivity::TotallyDisconnected, false,
            s.elliptic ? "G elliptic" : "G totally disconnected"};
  }
  if (s.r_invariant >= 1) {
    return {Connectivity::Connected, s.metacircular, "R(G) >= 1, G metacircular"};
  }
  return {Connectivity::DisconnectedNotTotally, false,
          "R(G) = 0, G neither elliptic nor totally disconnected"};
}

CardinalityVerdict component_cardinality(const GroupDescriptor& g) {
  using K = AtomKind;
  auto s = invariants(g);
  if (s.r_invariant >= 1) return {ComponentCardinality::SinglePoint, "R(G) >= 1, S(G) connected", false};
  if (g.only({K::Cyclic})) return {ComponentCardinality::Finite, "G finite", false};

  const auto adic = g.parameters(K::AdicZ);
  const auto prufer = g.parameters(K::Prufer);
  const auto qp = g.parameters(K::QpField);
  if (s.discrete && pairwise_distinct(prufer)) {
    return {ComponentCardinality::CountablyInfinite, "discrete, Z^l x distinct Prufer x finite", false};
  }
  if (s.compact && pairwise_distinct(adic)) {
    return {ComponentCardinality::CountablyInfinite, "compact, T^m x distinct adic x finite", false};
  }
  if (g.only({K::QpField, K::AdicZ, K::Prufer, K::Cyclic}) && pairwise_distinct(qp) &&
      pairwise_distinct(adic) && pairwise_distinct(prufer)) {
    bool coprime = std::none_of(qp.begin(), qp.end(), [&](std::uint64_t p) {
      return std::count(adic.begin(), adic.end(), p) > 0 || std::count(prufer.begin(), prufer.end(), p) > 0;
    });
    if (coprime) {
      return {ComponentCardinality::CountablyInfinite, "Q_l x Z_m x Prufer_n x finite, l prime to mn", false};
    }
  }
  if (g.only({K::IntegerZ, K::Torus1, K::Cyclic})) {
    return {ComponentCardinality::CountablyInfinite, "compact Lie by finitely generated", false};
  }
  return {ComponentCardinality::Uncountable, "no countable case applies", true};
}

bool is_isolated(const GroupDescriptor& h, const GroupDescriptor& q) {
  using K = AtomKind;
  const bool fg_times_adic = h.only({K::IntegerZ, K::Cyclic, K::AdicZ});
  const bool case1 = fg_times_adic && invariants(q).artinian;
  const bool case2 = invariants(h).adic && q.only({K::Torus1, K::Prufer, K::Cyclic});
  return case1 || case2;
}

GroupDescriptor hom_compact_descriptor(std::uint64_t r, std::uint64_t s) {
  return GroupDescriptor(std::vector<Atom>(r * s, Atom::torus()));
}

const char* to_string(Connectivity c) {
  switch (c) {
    case Connectivity::TotallyDisconnected:
      return "TotallyDisconnected";
    case Connectivity::Connected:
      return "Connected";
    case Connectivity::DisconnectedNotTotally:
      return "DisconnectedNotTotally";
  }
  return "?";
}

const char* to_string(ComponentCardinality c) {
  switch (c) {
    case ComponentCardinality::SinglePoint:
      return "SinglePoint";
    case ComponentCardinality::Finite:
      return "Finite";
    case ComponentCardinality::CountablyInfinite:
      return "CountablyInfinite";
    case ComponentCardinality::Uncountable:
      return "Uncountable";
  }
  return "?";
}

}  // namespace chabauty
