#include "chabauty/json_io.hpp"

#include "chabauty/error.hpp"
#include "chabauty/linalg.hpp"

namespace chabauty {

nlohmann::json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
  throw ParseError("rational must be a \"p/q\" string or an integer");
}

nlohmann::json vector_to_json(const QVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

QVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("vector must be an array");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

nlohmann::json matrix_to_json(const QMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(vector_to_json(m.column(c)));
  return out;
}

QMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows) {
  if (!j.is_array()) throw ParseError("matrix must be an array of columns");
  std::vector<QVector> cols;
  for (const auto& c : j) {
    QVector v = vector_from_json(c);
    if (v.size() != rows) throw ParseError("column length does not match ambient dimension");
    cols.push_back(std::move(v));
  }
  return QMatrix::from_columns(rows, cols);
}

nlohmann::json ambient_to_json(const AmbientGroup& g) {
  return {{"a", g.a}, {"b", g.b}, {"c", g.c}, {"finite", g.finite}};
}

AmbientGroup ambient_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("ambient must be an object");
  auto count = [&](const char* key) -> std::size_t {
    if (!j.contains(key)) return 0;
    if (!j[key].is_number_unsigned() && !(j[key].is_number_integer() && j[key].get<std::int64_t>() >= 0)) {
      throw ParseError(std::string("ambient field '") + key + "' must be a non-negative integer");
    }
    return j[key].get<std::size_t>();
  };
  std::vector<std::int64_t> finite;
  if (j.contains("finite")) {
    if (!j["finite"].is_array()) throw ParseError("ambient field 'finite' must be an array");
    for (const auto& n : j["finite"]) {
      if (!n.is_number_integer()) throw ParseError("finite orders must be integers");
      finite.push_back(n.get<std::int64_t>());
    }
  }
  try {
    return AmbientGroup(count("a"), count("b"), count("c"), finite);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

nlohmann::json subgroup_to_json(const ElementarySubgroup& h) {
  return {{"ambient", ambient_to_json(h.ambient())},
          {"cont", matrix_to_json(h.cont_gens())},
          {"disc", matrix_to_json(h.disc_gens())},
          {"canonical", true}};
}

ElementarySubgroup subgroup_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("ambient")) throw ParseError("subgroup must be an object with an 'ambient'");
  AmbientGroup g = ambient_from_json(j["ambient"]);
  QMatrix cont = j.contains("cont") ? matrix_from_json(j["cont"], g.dim()) : QMatrix(g.dim(), 0);
  QMatrix disc = j.contains("disc") ? matrix_from_json(j["disc"], g.dim()) : QMatrix(g.dim(), 0);
  if (cont.cols() == 0) cont = QMatrix(g.dim(), 0);
  if (disc.cols() == 0) disc = QMatrix(g.dim(), 0);
  return canonicalize(g, cont, disc);
}

nlohmann::json params_to_json(const MetricParams& p) {
  return {{"r_cut", rational_to_json(p.r_cut)}, {"delta", rational_to_json(p.delta)}};
}

MetricParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("r_cut") || !j.contains("delta")) {
    throw ParseError("params need 'r_cut' and 'delta'");
  }
  return MetricParams(rational_from_json(j["r_cut"]), rational_from_json(j["delta"]));
}

nlohmann::json estimate_to_json(const DistanceEstimate& e) {
  return {{"lower", rational_to_json(e.lower)},
          {"upper", rational_to_json(e.upper)},
          {"lower_approx", e.lower.get_d()},
          {"upper_approx", e.upper.get_d()},
          {"samples", e.samples},
          {"params", params_to_json(e.params)}};
}

nlohmann::json invariants_to_json(const InvariantSummary& s) {
  return {{"r_invariant", s.r_invariant},
          {"tdim", s.tdim},
          {"tdim_dual", s.tdim_dual},
          {"flags",
           {{"compact", s.compact},
            {"discrete", s.discrete},
            {"elliptic", s.elliptic},
            {"totally_disconnected", s.totally_disconnected},
            {"lie", s.lie},
            {"compactly_generated", s.compactly_generated},
            {"metacircular", s.metacircular},
            {"finitely_generated", s.finitely_generated},
            {"adic", s.adic},
            {"artinian", s.artinian},
            {"torus", s.torus}}}};
}

nlohmann::json classify_to_json(const GroupDescriptor& g) {
  auto conn = classify_connectivity(g);
  auto card = component_cardinality(g);
  nlohmann::json connectivity = {{"kind", to_string(conn.kind)}, {"case", conn.case_label}};
  if (conn.kind == Connectivity::Connected) connectivity["path_connected"] = conn.path_connected;
  return {{"descriptor", g.to_string()},
          {"dual", dual_descriptor(g).to_string()},
          {"invariants", invariants_to_json(invariants(g))},
          {"sdim", sdim(g)},
          {"connectivity", connectivity},
          {"component_cardinality",
           {{"kind", to_string(card.kind)}, {"case", card.case_label}, {"theorem_boundary", card.theorem_boundary}}}};
}

FiniteAbelianGroup finite_group_from_json(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object()) {
    if (!j.contains("invariant_factors")) throw ParseError("finite group needs 'invariant_factors'");
    list = &j["invariant_factors"];
  }
  if (!list->is_array()) throw ParseError("invariant_factors must be an array");
  QVector orders;
  for (const auto& n : *list) {
    if (!n.is_number_integer() || n.get<std::int64_t>() < 2) throw ParseError("orders must be integers >= 2");
    orders.push_back(Rational(std::to_string(n.get<std::int64_t>())));
  }
  std::vector<std::int64_t> factors;
  if (!orders.empty()) {
    for (const auto& d : snf(QMatrix::diagonal(orders)).diagonal) {
      if (d > 1) factors.push_back(d.get_num().get_si());
    }
  }
  return FiniteAbelianGroup(factors);
}

nlohmann::json fin_subgroup_to_json(const FinSubgroup& h) {
  const std::size_t r = h.group().rank();
  nlohmann::json cols = nlohmann::json::array();
  for (std::size_t k = 0; k < r; ++k) {
    nlohmann::json col = nlohmann::json::array();
    for (std::size_t i = 0; i < r; ++i) col.push_back(h.entry(i, k));
    cols.push_back(col);
  }
  return {{"order", h.order()}, {"hnf", cols}, {"generators", h.generators()}};
}

}  // namespace chabauty
