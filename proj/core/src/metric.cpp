#include "chabauty/metric.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "chabauty/error.hpp"
#include "chabauty/linalg.hpp"

namespace chabauty {

MetricParams::MetricParams(Rational r_cut_, Rational delta_) : r_cut(std::move(r_cut_)), delta(std::move(delta_)) {
  if (r_cut < 1) throw PreconditionError("r_cut must be >= 1");
  if (delta <= 0 || delta > 1) throw PreconditionError("delta must lie in (0, 1]");
}

namespace {

Rational torus_gap2(const Rational& t) {
  Rational frac = t - Rational(floor(t));
  Rational gap = std::min(frac, Rational(1 - frac));
  return gap * gap;
}

// Squared G-norm of a covering point given by its E-block (R, Z, T
// coordinates) and whether its finite part is nonzero.
Rational g_norm2(const AmbientGroup& g, const QVector& e, bool finite_nonzero) {
  Rational s = finite_nonzero ? 1 : 0;
  for (std::size_t i = 0; i < g.t_offset(); ++i) s += e[i] * e[i];
  for (std::size_t i = g.t_offset(); i < g.f_offset(); ++i) s += torus_gap2(e[i]);
  return s;
}

Bounds sqrt_bounds(const Rational& q) { return {sqrt_lower(q), sqrt_upper(q)}; }

// r(x) = 1/(1 + |x|) from |x|^2.
Bounds radius_weight(const Rational& n2) {
  Bounds s = sqrt_bounds(n2);
  return {1 / (1 + s.upper), 1 / (1 + s.lower)};
}

Bounds min_bounds(const Bounds& a, const Bounds& b) {
  return {std::min(a.lower, b.lower), std::min(a.upper, b.upper)};
}

struct Sample {
  QVector e;
  QVector residue;
  Rational norm2;
};

// Decomposition of a subgroup into finite cosets, each a translate of
// V + Lambda0 in the E-block.
class SubgroupGeometry {
 public:
  explicit SubgroupGeometry(const ElementarySubgroup& h) : g_(h.ambient()) {
    const std::size_t e_dim = g_.f_offset();
    const std::size_t f = g_.f();
    const std::size_t n = g_.dim();

    QMatrix v(e_dim, h.subspace().cols());
    for (std::size_t j = 0; j < v.cols(); ++j) {
      for (std::size_t i = 0; i < e_dim; ++i) v(i, j) = h.subspace()(i, j);
    }

    // Finite rows first: columns pivoting in the E-block then span the
    // intersection with E x {0}.
    QMatrix permuted(n, h.lattice().cols());
    for (std::size_t j = 0; j < permuted.cols(); ++j) {
      for (std::size_t i = 0; i < f; ++i) permuted(i, j) = h.lattice()(e_dim + i, j);
      for (std::size_t i = 0; i < e_dim; ++i) permuted(f + i, j) = h.lattice()(i, j);
    }
    QMatrix echelon = hnf(permuted);
    std::vector<std::size_t> piv = pivot_rows(echelon);
    std::vector<QVector> finite_cols, zero_cols;
    for (std::size_t j = 0; j < echelon.cols(); ++j) {
      QVector col = echelon.column(j);
      if (piv[j] < f) {
        finite_cols.push_back(col);
      } else {
        zero_cols.emplace_back(col.begin() + static_cast<std::ptrdiff_t>(f), col.end());
      }
    }

    // Orthogonal projector onto the complement of V inside the E-block.
    projector_ = QMatrix::identity(e_dim);
    has_subspace_ = v.cols() > 0;
    if (has_subspace_) {
      QMatrix vt = v.transpose();
      QMatrix p = v * *inverse(vt * v) * vt;
      for (std::size_t i = 0; i < e_dim; ++i) {
        for (std::size_t j = 0; j < e_dim; ++j) projector_(i, j) -= p(i, j);
      }
    }
    QMatrix lambda0 = zero_cols.empty() ? QMatrix(e_dim, 0) : QMatrix::from_columns(e_dim, zero_cols);
    if (has_subspace_) lambda0 = projector_ * lambda0;
    lambda0_ = lll_reduce(LatticeBasis(lambda0)).basis();
    enumerator_.emplace(LatticeBasis(lambda0_));

    // Gram-Schmidt basis of V with per-direction grid refinements.
    for (std::size_t j = 0; j < v.cols(); ++j) {
      QVector w = v.column(j);
      for (const auto& prev : orth_) w = w - (dot(w, prev) / norm2(prev)) * prev;
      orth_.push_back(w);
    }
    for (const auto& w : orth_) {
      refine_.push_back(ceil_sqrt(Rational(static_cast<long>(orth_.size())) * norm2(w) / 4));
    }

    // One representative per coset of the finite image.
    std::vector<Integer> counts;
    for (std::size_t j = 0; j < finite_cols.size(); ++j) {
      Rational period = 1 / finite_cols[j][piv[j]];
      counts.push_back(period.get_num());
    }
    std::vector<Integer> c(finite_cols.size(), 0);
    while (true) {
      QVector total(n);
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] != 0) total = total + Rational(c[j]) * finite_cols[j];
      }
      QVector residue(total.begin(), total.begin() + static_cast<std::ptrdiff_t>(f));
      for (auto& r : residue) r -= Rational(floor(r));
      QVector t(total.begin() + static_cast<std::ptrdiff_t>(f), total.end());
      cosets_.emplace(std::move(residue), std::move(t));
      std::size_t k = 0;
      while (k < c.size() && c[k] + 1 == counts[k]) c[k++] = 0;
      if (k == c.size()) break;
      ++c[k];
    }
  }

  std::optional<Rational> distance2(const Sample& s) const {
    auto it = cosets_.find(s.residue);
    if (it == cosets_.end()) return std::nullopt;
    QVector x = s.e - it->second;
    if (has_subspace_) x = projector_ * x;
    return enumerator_->distance2(x);
  }

  std::vector<Sample> samples(const MetricParams& params, std::size_t cap) const {
    const Rational r2 = params.r_cut * params.r_cut;
    const std::size_t k = orth_.size();
    std::vector<Rational> steps;
    for (std::size_t i = 0; i < k; ++i) steps.push_back(params.delta / Rational(refine_[i]));

    std::set<std::pair<QVector, QVector>> seen;
    std::vector<Sample> out;
    auto emit = [&](QVector e, const QVector& residue) {
      QVector key = e;
      for (std::size_t i = g_.t_offset(); i < g_.f_offset(); ++i) key[i] -= Rational(floor(key[i]));
      if (!seen.emplace(key, residue).second) return;
      if (out.size() >= cap) {
        throw ResourceError("sample net exceeds cap of " + std::to_string(cap) + " points");
      }
      Rational n2 = g_norm2(g_, e, !is_zero(residue));
      out.push_back({std::move(e), residue, std::move(n2)});
    };

    for (const auto& [residue, t] : cosets_) {
      Rational budget = r2 - (is_zero(residue) ? 0 : 1);
      if (budget < 0) continue;
      QVector t_perp = has_subspace_ ? projector_ * t : t;
      QVector neg(t_perp.size());
      for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -t_perp[i];
      for (const auto& c : enumerator_->ball(neg, budget)) {
        QVector base = t_perp;
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (c[j] != 0) base = base + c[j] * lambda0_.column(j);
        }
        Rational rem = budget - norm2(base);
        if (k == 0) {
          emit(std::move(base), residue);
          continue;
        }
        std::vector<Integer> bound(k);
        for (std::size_t i = 0; i < k; ++i) {
          bound[i] = ceil_sqrt(rem / (steps[i] * steps[i] * norm2(orth_[i])));
        }
        std::vector<Integer> m(k);
        for (std::size_t i = 0; i < k; ++i) m[i] = -bound[i];
        while (true) {
          QVector p = base;
          for (std::size_t i = 0; i < k; ++i) {
            if (m[i] != 0) p = p + (Rational(m[i]) * steps[i]) * orth_[i];
          }
          emit(std::move(p), residue);
          std::size_t i = 0;
          while (i < k && m[i] == bound[i]) {
            m[i] = -bound[i];
            ++i;
          }
          if (i == k) break;
          ++m[i];
        }
      }
    }
    return out;
  }

  QVector external(const Sample& s) const {
    QVector x = s.e;
    x.insert(x.end(), s.residue.begin(), s.residue.end());
    return to_external(g_, x);
  }

 private:
  AmbientGroup g_;
  bool has_subspace_ = false;
  QMatrix projector_;
  QMatrix lambda0_;
  std::optional<LatticeEnumerator> enumerator_;
  std::vector<QVector> orth_;
  std::vector<Integer> refine_;
  std::map<QVector, QVector> cosets_;
};

// f(s) = min(r(s), d(s, K)) with certified bounds.
Bounds point_to_subgroup(const Sample& s, const SubgroupGeometry& k) {
  Bounds r = radius_weight(s.norm2);
  auto d2 = k.distance2(s);
  if (!d2) return r;
  return min_bounds(r, sqrt_bounds(*d2));
}

}  // namespace

Rational group_distance2(const AmbientGroup& g, const QVector& x, const QVector& y) {
  if (x.size() != g.dim() || y.size() != g.dim()) throw PreconditionError("point dimension mismatch");
  QVector diff = x - y;
  bool finite_differs = false;
  for (std::size_t i = 0; i < g.f(); ++i) {
    Rational k = diff[g.f_offset() + i];
    if (!is_integer(k)) throw PreconditionError("finite coordinate is not an integer residue");
    if (k.get_num() % Integer(static_cast<long>(g.finite[i])) != 0) finite_differs = true;
  }
  QVector e(diff.begin(), diff.begin() + static_cast<std::ptrdiff_t>(g.f_offset()));
  return g_norm2(g, e, finite_differs);
}

Bounds compactified_dist(const AmbientGroup& g, const std::optional<QVector>& x, const std::optional<QVector>& y) {
  if (!x && !y) return {0, 0};
  if (!x || !y) {
    const QVector& p = x ? *x : *y;
    return radius_weight(group_distance2(g, p, QVector(g.dim())));
  }
  Bounds rx = radius_weight(group_distance2(g, *x, QVector(g.dim())));
  Bounds ry = radius_weight(group_distance2(g, *y, QVector(g.dim())));
  Bounds d = sqrt_bounds(group_distance2(g, *x, *y));
  return min_bounds(d, {rx.lower + ry.lower, rx.upper + ry.upper});
}

std::vector<QVector> sample_points(const ElementarySubgroup& h, const MetricParams& params, std::size_t cap) {
  SubgroupGeometry geo(h);
  std::vector<QVector> out;
  for (const auto& s : geo.samples(params, cap)) out.push_back(geo.external(s));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// max over samples of h of f(s), as bounds.
Bounds directed(const std::vector<Sample>& samples, const SubgroupGeometry& k) {
  Bounds v{0, 0};
  for (const auto& s : samples) {
    Bounds b = point_to_subgroup(s, k);
    if (b.lower > v.lower) v.lower = b.lower;
    if (b.upper > v.upper) v.upper = b.upper;
  }
  return v;
}

}  // namespace

DistanceEstimate chabauty_distance(const ElementarySubgroup& h, const ElementarySubgroup& k,
                                   const MetricParams& params, std::size_t cap) {
  if (!(h.ambient() == k.ambient())) throw AmbientMismatchError();
  SubgroupGeometry gh(h);
  SubgroupGeometry gk(k);
  auto sh = gh.samples(params, cap);
  auto sk = gk.samples(params, cap);
  Bounds a = directed(sh, gk);
  Bounds b = directed(sk, gh);
  Rational v_lower = std::max(a.lower, b.lower);
  Rational v_upper = std::max(a.upper, b.upper);
  DistanceEstimate est{v_lower, std::max(Rational(v_upper + params.delta), params.tail()), params,
                       sh.size() + sk.size()};
  return est;
}

namespace {

nlohmann::json series_case_data(const std::vector<DistanceEstimate>& terms, std::size_t stable_from,
                                const std::string& hint) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    rows.push_back({{"n", i + 1}, {"lower", to_string(terms[i].lower)}, {"upper", to_string(terms[i].upper)}});
  }
  nlohmann::json data = {{"terms", rows}};
  if (!terms.empty()) data["stable_from"] = stable_from + 1;
  if (!hint.empty()) data["hint"] = hint;
  return data;
}

ReportCase judge_series(const std::string& name, const std::vector<DistanceEstimate>& terms,
                        const MetricParams& params, const Rational& eps) {
  if (terms.empty()) return {name, Verdict::Inconclusive, series_case_data(terms, 0, "empty sequence")};
  std::size_t stable_from = terms.size() - 1;
  while (stable_from > 0 && terms[stable_from - 1].upper >= terms[stable_from].upper) --stable_from;
  const DistanceEstimate& last = terms.back();
  if (last.lower >= eps) {
    return {name, Verdict::Fail, series_case_data(terms, stable_from, "final lower bound >= eps")};
  }
  if (last.upper < eps) return {name, Verdict::Pass, series_case_data(terms, stable_from, "")};
  Rational floor_value = std::max(params.delta, params.tail());
  std::string hint = floor_value >= eps
                         ? "resolution floor max(delta, 1/(1+r_cut)) = " + to_string(floor_value) +
                               " >= eps; increase r_cut or decrease delta"
                         : "final upper bound >= eps; refine parameters or extend the sequence";
  return {name, Verdict::Inconclusive, series_case_data(terms, stable_from, hint)};
}

}  // namespace

VerificationReport converges_to(const std::vector<ElementarySubgroup>& seq, const ElementarySubgroup& limit,
                                const MetricParams& params, const Rational& eps, bool check_dual,
                                std::size_t cap) {
  if (eps <= 0) throw PreconditionError("eps must be positive");
  for (const auto& h : seq) {
    if (!(h.ambient() == limit.ambient())) throw AmbientMismatchError();
  }
  nlohmann::json echo = {{"r_cut", to_string(params.r_cut)},
                         {"delta", to_string(params.delta)},
                         {"eps", to_string(eps)},
                         {"dual", check_dual},
                         {"cap", cap}};
  VerificationReport report("converges_to", 0, echo);
  std::vector<DistanceEstimate> terms;
  for (const auto& h : seq) terms.push_back(chabauty_distance(h, limit, params, cap));
  report.add(judge_series("primal", terms, params, eps));
  if (check_dual) {
    ElementarySubgroup dual_limit = orthogonal(limit);
    std::vector<DistanceEstimate> dual_terms;
    for (const auto& h : seq) dual_terms.push_back(chabauty_distance(orthogonal(h), dual_limit, params, cap));
    report.add(judge_series("dual", dual_terms, params, eps));
  }
  return report;
}

}  // namespace chabauty
