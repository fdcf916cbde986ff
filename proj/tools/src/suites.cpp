#include "chabauty/cli/suites.hpp"

#include <algorithm>

#include "chabauty/cli/generators.hpp"
#include "chabauty/error.hpp"
#include "chabauty/json_io.hpp"
#include "chabauty/linalg.hpp"

namespace chabauty::cli {

namespace {

constexpr std::int64_t kSequenceLength = 40;
constexpr int kPathSteps = 8;

std::size_t trials_or(const RunConfig& config, std::size_t fallback) {
  return config.trials > 0 ? config.trials : fallback;
}

Rational power_of_two(int j) {
  Rational r = 1;
  for (int i = 0; i < std::abs(j); ++i) r *= 2;
  return j >= 0 ? r : 1 / r;
}

std::string brief(const ElementarySubgroup& h) { return subgroup_to_json(h).dump(); }

}  // namespace

nlohmann::json config_to_json(const RunConfig& config) {
  return {{"seed", config.seed},
          {"r_cut", to_string(config.params.r_cut)},
          {"delta", to_string(config.params.delta)},
          {"eps", to_string(config.eps)},
          {"net_cap", config.net_cap},
          {"order_cap", config.order_cap},
          {"cd", config.cd == 0 ? nlohmann::json("d") : nlohmann::json(to_string(config.cd))},
          {"trials", config.trials},
          {"max_order", config.max_order}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"duality", "transference", "paths", "finite", "components"};
  return names;
}

VerificationReport run_suite(std::string_view name, const RunConfig& config) {
  if (name == "duality") return duality_suite(config);
  if (name == "transference") return transference_suite(config);
  if (name == "paths") return paths_suite(config);
  if (name == "finite") return finite_suite(config);
  if (name == "components") return components_suite(config);
  throw PreconditionError("unknown suite '" + std::string(name) + "'");
}

// Perturbed lattices (I + E/n) Z^2 -> Z^2 and their orthogonals.
VerificationReport duality_suite(const RunConfig& config) {
  VerificationReport report("duality", config.seed, config_to_json(config));
  const LatticeBasis z2(QMatrix::identity(2));
  const ElementarySubgroup limit = lattice_subgroup(z2);
  const std::size_t trials = trials_or(config, 100);
  for (std::size_t t = 0; t < trials; ++t) {
    TrialRng rng(config.seed, "duality", t);
    QMatrix e = random_direction(rng, 2);
    std::vector<ElementarySubgroup> seq;
    std::int64_t first = 1;
    // Skip the leading indices where I + E/n is singular.
    while (determinant(QMatrix::identity(2) + Rational(1, first) * e) == 0) ++first;
    for (std::int64_t n = first; n <= kSequenceLength; ++n) seq.push_back(perturb_sequence(z2, e, n));
    VerificationReport inner = converges_to(seq, limit, config.params, config.eps, true, config.net_cap);
    ReportCase c{"trial " + std::to_string(t) + " E=" + matrix_to_json(e).dump(), inner.overall(), {}};
    for (const auto& sub : inner.cases()) c.data[sub.input] = sub.data;
    report.add(std::move(c));
  }
  return report;
}

// sqrt(lambda_1^2(L)) * mu(L^dual) <= C_d on random integer lattices.
VerificationReport transference_suite(const RunConfig& config) {
  VerificationReport report("transference", config.seed, config_to_json(config));
  const std::size_t trials = trials_or(config, 200);
  const Rational step(1, 20);
  Rational worst_ratio = 0;
  Rational worst_product = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    TrialRng rng(config.seed, "transference", t);
    const std::size_t d = static_cast<std::size_t>(rng.uniform(2, 3));
    LatticeBasis b = random_integer_lattice(rng, d, -5, 5);
    const Rational cd = config.cd == 0 ? Rational(static_cast<long>(d)) : config.cd;
    const Rational lambda1 = sqrt_upper(shortest_vector(b).norm2);
    const Rational mu = covering_radius_upper(dual_lattice(b), step);
    const Rational product = lambda1 * mu;
    if (product / cd > worst_ratio) {
      worst_ratio = product / cd;
      worst_product = product;
    }
    report.add({"trial " + std::to_string(t) + " d=" + std::to_string(d) + " B=" + matrix_to_json(b.basis()).dump(),
                product <= cd ? Verdict::Pass : Verdict::Fail,
                {{"lambda1_upper", to_string(lambda1)},
                 {"covering_radius_upper", to_string(mu)},
                 {"product_upper", to_string(product)},
                 {"product_approx", product.get_d()},
                 {"cd", to_string(cd)}}});
  }
  report.set_extra("max_product", to_string(worst_product));
  report.set_extra("max_product_approx", worst_product.get_d());
  report.set_extra("max_ratio_to_cd", worst_ratio.get_d());
  return report;
}

// tau_{2^-j}(L) -> pathbase_limit(L), and the circle path endpoints.
VerificationReport paths_suite(const RunConfig& config) {
  VerificationReport report("paths", config.seed, config_to_json(config));
  const std::size_t trials = trials_or(config, 20);
  for (std::size_t t = 0; t < trials; ++t) {
    TrialRng rng(config.seed, "paths", t);
    const std::int64_t n = rng.uniform(2, 6);
    const AmbientGroup g(1, 0, 0, {n});
    const ElementarySubgroup l = random_subgroup(rng, g, 1, 2);
    const ElementarySubgroup limit = pathbase_limit(l);

    nlohmann::json rows = nlohmann::json::array();
    bool monotone = true;
    Rational prev_upper = -1;
    DistanceEstimate last{0, 0, config.params};
    for (int j = 0; j <= kPathSteps; ++j) {
      last = chabauty_distance(tau_scale(l, power_of_two(-j)), limit, config.params, config.net_cap);
      if (prev_upper >= 0 && last.upper > prev_upper) monotone = false;
      prev_upper = last.upper;
      rows.push_back({{"j", j}, {"lower", to_string(last.lower)}, {"upper", to_string(last.upper)}});
    }
    Verdict v = Verdict::Pass;
    if (!monotone || last.lower >= config.eps) {
      v = Verdict::Fail;
    } else if (last.upper >= config.eps) {
      v = Verdict::Inconclusive;
    }
    report.add({"pathbase n=" + std::to_string(n) + " L=" + brief(l), v,
                {{"limit", subgroup_to_json(limit)}, {"terms", rows}, {"monotone", monotone}}});

    const Rational small = power_of_two(-kPathSteps);
    const Rational large = power_of_two(kPathSteps);
    DistanceEstimate to_full = chabauty_distance(circle_path(n, small), full_subgroup(g), config.params, config.net_cap);
    DistanceEstimate to_zero = chabauty_distance(circle_path(n, large), trivial_subgroup(g), config.params, config.net_cap);
    auto endpoint = [&](const DistanceEstimate& e) {
      if (e.lower >= config.eps) return Verdict::Fail;
      return e.upper < config.eps ? Verdict::Pass : Verdict::Inconclusive;
    };
    report.add({"circle n=" + std::to_string(n), worst(endpoint(to_full), endpoint(to_zero)),
                {{"to_full", estimate_to_json(to_full)}, {"to_zero", estimate_to_json(to_zero)}}});
  }
  return report;
}

// verify_duality_fin over every abelian group of order <= max_order.
VerificationReport finite_suite(const RunConfig& config) {
  VerificationReport report("finite", config.seed, config_to_json(config));
  std::size_t groups = 0;
  for (std::int64_t n = 1; n <= config.max_order; ++n) {
    for (const auto& g : abelian_groups_of_order(n)) {
      ++groups;
      VerificationReport inner = verify_duality_fin(g, config.order_cap);
      ReportCase c{"Z/" + nlohmann::json(g.invariant_factors()).dump(), inner.overall(), {}};
      for (const auto& sub : inner.cases()) c.data[sub.input] = sub.data;
      report.add(std::move(c));
    }
  }
  report.set_extra("groups", groups);
  return report;
}

// Component tori of S(Z^b x T^c x F): the dimension r*s against the rigidity
// criterion, and a nontrivial component exhibited by a deformation.
// Metric for the tilt convergence check.
const MetricParams kTiltParams(4, Rational(1, 16));
const Rational kTiltEps(1, 4);

VerificationReport components_suite(const RunConfig& config) {
  VerificationReport report("components", config.seed, config_to_json(config));
  const std::size_t trials = trials_or(config, 40);
  for (std::size_t t = 0; t < trials; ++t) {
    TrialRng rng(config.seed, "components", t);
    const std::size_t b = static_cast<std::size_t>(rng.uniform(1, 2));
    const std::size_t c = static_cast<std::size_t>(rng.uniform(1, 2));
    std::vector<std::int64_t> finite;
    if (rng.coin()) finite.push_back(rng.uniform(2, 4));
    const AmbientGroup g(0, b, c, finite);
    const ElementarySubgroup h = random_subgroup(rng, g, 1, 2);
    const std::uint64_t dim = component_of(g, h);
    const bool elliptic = invariants(subgroup_descriptor(h)).elliptic;
    const bool td_quotient = invariants(quotient_descriptor(g, h)).totally_disconnected;
    const bool rigid = elliptic || td_quotient;

    nlohmann::json data = {{"torus_dim", dim},
                           {"component", hom_compact_descriptor(dim, 1).to_string()},
                           {"elliptic", elliptic},
                           {"quotient_totally_disconnected", td_quotient}};
    Verdict v = (dim == 0) == rigid ? Verdict::Pass : Verdict::Fail;

    if (dim > 0 && v == Verdict::Pass) {
      // Tilt a generator with nonzero Z-image along a torus direction
      // outside V: h_s -> h as s -> 0 with h_s != h.
      QMatrix disc = h.disc_gens();
      std::size_t col = disc.cols();
      for (std::size_t j = 0; j < disc.cols() && col == disc.cols(); ++j) {
        for (std::size_t i = 0; i < b; ++i) {
          if (disc(g.z_offset() + i, j) != 0) col = j;
        }
      }
      QMatrix v_block = h.cont_gens();
      std::size_t dir = c;
      for (std::size_t i = 0; i < c && dir == c; ++i) {
        QVector u(g.dim());
        u[g.t_offset() + i] = 1;
        if (rank(v_block.hconcat(QMatrix::from_columns(g.dim(), {u}))) > v_block.cols()) dir = i;
      }
      std::vector<ElementarySubgroup> seq;
      for (int j = 1; j <= kPathSteps; ++j) {
        QMatrix tilted = disc;
        tilted(g.t_offset() + dir, col) += power_of_two(-j) / 3;
        seq.push_back(canonicalize(g, h.cont_gens(), tilted));
      }
      const bool distinct = !(seq.back() == h);
      data["deformation_distinct"] = distinct;
      data["deformation_params"] = {{"r_cut", to_string(kTiltParams.r_cut)},
                                    {"delta", to_string(kTiltParams.delta)},
                                    {"eps", to_string(kTiltEps)}};
      try {
        VerificationReport inner = converges_to(seq, h, kTiltParams, kTiltEps, false, config.net_cap);
        data["deformation"] = inner.cases().front().data;
        v = distinct ? inner.overall() : Verdict::Fail;
      } catch (const ResourceError& e) {
        data["deformation_error"] = e.what();
        v = distinct ? Verdict::Inconclusive : Verdict::Fail;
      }
    }
    report.add({"trial " + std::to_string(t) + " H=" + brief(h), v, std::move(data)});
  }
  return report;
}

}  // namespace chabauty::cli
