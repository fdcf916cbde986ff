#pragma once

#include <nlohmann/json.hpp>

#include "chabauty/descriptor.hpp"
#include "chabauty/finite_lattice.hpp"
#include "chabauty/metric.hpp"
#include "chabauty/subgroup.hpp"

namespace chabauty {

nlohmann::json rational_to_json(const Rational& q);
// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const nlohmann::json& j);

// Matrices are arrays of column arrays.
nlohmann::json matrix_to_json(const QMatrix& m);
QMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows);
nlohmann::json vector_to_json(const QVector& v);
QVector vector_from_json(const nlohmann::json& j);

nlohmann::json ambient_to_json(const AmbientGroup& g);
AmbientGroup ambient_from_json(const nlohmann::json& j);

// {"ambient": ..., "cont": [[rat]], "disc": [[rat]], "canonical": true}
nlohmann::json subgroup_to_json(const ElementarySubgroup& h);
ElementarySubgroup subgroup_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const MetricParams& p);
MetricParams params_from_json(const nlohmann::json& j);
nlohmann::json estimate_to_json(const DistanceEstimate& e);

nlohmann::json invariants_to_json(const InvariantSummary& s);
// {invariants, sdim, connectivity, component_cardinality}
nlohmann::json classify_to_json(const GroupDescriptor& g);

// {"invariant_factors": [...]}; any list of orders >= 2 is accepted and
// brought to invariant-factor form.
FiniteAbelianGroup finite_group_from_json(const nlohmann::json& j);
nlohmann::json fin_subgroup_to_json(const FinSubgroup& h);

}  // namespace chabauty
