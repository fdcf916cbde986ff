#include "chabauty/subgroup.hpp"

#include <algorithm>
#include <functional>

#include "chabauty/error.hpp"
#include "chabauty/linalg.hpp"

namespace chabauty {

AmbientGroup::AmbientGroup(std::size_t a_, std::size_t b_, std::size_t c_, std::vector<std::int64_t> finite_)
    : a(a_), b(b_), c(c_), finite(std::move(finite_)) {
  for (auto n : finite) {
    if (n < 2) throw PreconditionError("finite orders must be >= 2");
  }
}

AmbientGroup AmbientGroup::dual() const { return AmbientGroup(a, c, b, finite); }

GroupDescriptor AmbientGroup::descriptor() const {
  std::vector<Atom> atoms;
  atoms.insert(atoms.end(), a, Atom::real_line());
  atoms.insert(atoms.end(), b, Atom::integers());
  atoms.insert(atoms.end(), c, Atom::torus());
  for (auto n : finite) atoms.push_back(Atom::cyclic(static_cast<std::uint64_t>(n)));
  return GroupDescriptor(std::move(atoms));
}

namespace {

// Leading coordinate of each column of a span_basis matrix.
std::vector<std::size_t> leading_rows(const QMatrix& basis) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    std::size_t r = 0;
    while (basis(r, c) == 0) ++r;
    out.push_back(r);
  }
  return out;
}

QVector project_along(const QMatrix& subspace, const std::vector<std::size_t>& leads, QVector x) {
  for (std::size_t k = 0; k < leads.size(); ++k) {
    Rational coeff = x[leads[k]];
    if (coeff == 0) continue;
    for (std::size_t r = 0; r < x.size(); ++r) {
      if (subspace(r, k) != 0) x[r] -= coeff * subspace(r, k);
    }
  }
  return x;
}

// Coefficients of p in the echelon basis, or nullopt if p is outside its
// rational span.
std::optional<QVector> echelon_coordinates(const QMatrix& echelon, QVector p) {
  std::vector<std::size_t> piv = pivot_rows(echelon);
  QVector coeffs(echelon.cols());
  for (std::size_t j = 0; j < echelon.cols(); ++j) {
    Rational cj = p[piv[j]] / echelon(piv[j], j);
    coeffs[j] = cj;
    if (cj == 0) continue;
    for (std::size_t r = piv[j]; r < p.size(); ++r) p[r] -= cj * echelon(r, j);
  }
  if (!is_zero(p)) return std::nullopt;
  return coeffs;
}

bool in_lattice(const QMatrix& echelon, const QVector& p) {
  auto coeffs = echelon_coordinates(echelon, p);
  if (!coeffs) return false;
  return std::all_of(coeffs->begin(), coeffs->end(), [](const Rational& q) { return is_integer(q); });
}

QVector unit(std::size_t n, std::size_t i) {
  QVector v(n);
  v[i] = 1;
  return v;
}

void require_same_ambient(const ElementarySubgroup& h1, const ElementarySubgroup& h2) {
  if (!(h1.ambient() == h2.ambient())) throw AmbientMismatchError();
}

// Type of (R^m x Z^s)/L for a discrete L given by generator columns.
GroupDescriptor cylinder_quotient(std::size_t m, std::size_t s, const QMatrix& gens) {
  std::size_t rho = rank(gens);
  QMatrix integral(s, gens.cols());
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t c = 0; c < gens.cols(); ++c) integral(r, c) = gens(m + r, c);
  }
  std::size_t rho_z = 0;
  std::vector<Atom> atoms;
  for (const auto& d : snf(integral).diagonal) {
    if (d == 0) continue;
    ++rho_z;
    if (d > 1) atoms.push_back(Atom::cyclic(d.get_num().get_ui()));
  }
  std::size_t q = rho - rho_z;
  atoms.insert(atoms.end(), m - q, Atom::real_line());
  atoms.insert(atoms.end(), q, Atom::torus());
  atoms.insert(atoms.end(), s - rho_z, Atom::integers());
  return GroupDescriptor(std::move(atoms));
}

}  // namespace

ElementarySubgroup ElementarySubgroup::from_internal(const AmbientGroup& ambient, const QMatrix& cont,
                                                     const QMatrix& disc) {
  const std::size_t n = ambient.dim();
  if ((cont.cols() > 0 && cont.rows() != n) || (disc.cols() > 0 && disc.rows() != n)) {
    throw PreconditionError("generator dimension mismatch");
  }
  ElementarySubgroup h;
  h.ambient_ = ambient;
  h.subspace_ = cont.cols() > 0 ? span_basis(cont) : QMatrix(n, 0);
  auto leads = leading_rows(h.subspace_);
  std::vector<QVector> gens;
  for (std::size_t j = 0; j < disc.cols(); ++j) gens.push_back(project_along(h.subspace_, leads, disc.column(j)));
  for (std::size_t i = ambient.t_offset(); i < n; ++i) gens.push_back(project_along(h.subspace_, leads, unit(n, i)));
  h.lattice_ = gens.empty() ? QMatrix(n, 0) : hnf(QMatrix::from_columns(n, gens));
  return h;
}

QVector to_internal(const AmbientGroup& ambient, const QVector& external) {
  if (external.size() != ambient.dim()) throw PreconditionError("point dimension mismatch");
  QVector x = external;
  for (std::size_t i = 0; i < ambient.b; ++i) {
    if (!is_integer(x[ambient.z_offset() + i])) throw PreconditionError("point leaves Z^b");
  }
  for (std::size_t i = 0; i < ambient.f(); ++i) {
    Rational& v = x[ambient.f_offset() + i];
    if (!is_integer(v)) throw PreconditionError("finite coordinate is not an integer residue");
    Integer k = v.get_num() % Integer(static_cast<long>(ambient.finite[i]));
    if (k < 0) k += static_cast<long>(ambient.finite[i]);
    v = Rational(k, Integer(static_cast<long>(ambient.finite[i])));
    v.canonicalize();
  }
  return x;
}

QVector to_external(const AmbientGroup& ambient, const QVector& internal) {
  QVector x = internal;
  for (std::size_t i = 0; i < ambient.f(); ++i) {
    Rational& v = x[ambient.f_offset() + i];
    Rational scaled = v * static_cast<long>(ambient.finite[i]);
    if (!is_integer(scaled)) throw PreconditionError("finite coordinate off the (1/n)Z grid");
    Integer k = scaled.get_num() % Integer(static_cast<long>(ambient.finite[i]));
    if (k < 0) k += static_cast<long>(ambient.finite[i]);
    v = k;
  }
  return x;
}

QMatrix ElementarySubgroup::cont_gens() const { return subspace_; }

QMatrix ElementarySubgroup::disc_gens() const {
  std::vector<QVector> cols;
  for (std::size_t j = 0; j < lattice_.cols(); ++j) {
    QVector ext = to_external(ambient_, lattice_.column(j));
    if (!is_zero(ext)) cols.push_back(std::move(ext));
  }
  return cols.empty() ? QMatrix(ambient_.dim(), 0) : QMatrix::from_columns(ambient_.dim(), cols);
}

ElementarySubgroup canonicalize(const AmbientGroup& ambient, const QMatrix& cont, const QMatrix& disc) {
  const std::size_t n = ambient.dim();
  if ((cont.cols() > 0 && cont.rows() != n) || (disc.cols() > 0 && disc.rows() != n)) {
    throw PreconditionError("generator dimension mismatch");
  }
  for (std::size_t j = 0; j < cont.cols(); ++j) {
    for (std::size_t i = 0; i < ambient.b; ++i) {
      if (cont(ambient.z_offset() + i, j) != 0) throw PreconditionError("continuous generator leaves Z^b");
    }
    for (std::size_t i = 0; i < ambient.f(); ++i) {
      if (cont(ambient.f_offset() + i, j) != 0) {
        throw PreconditionError("continuous generator has a finite component");
      }
    }
  }
  QMatrix internal(n, disc.cols());
  for (std::size_t j = 0; j < disc.cols(); ++j) {
    for (std::size_t i = 0; i < ambient.b; ++i) {
      if (!is_integer(disc(ambient.z_offset() + i, j))) throw PreconditionError("generator leaves Z^b");
    }
    for (std::size_t i = 0; i < ambient.f(); ++i) {
      if (!is_integer(disc(ambient.f_offset() + i, j))) {
        throw PreconditionError("generator leaves the finite factor");
      }
    }
    internal.set_column(j, to_internal(ambient, disc.column(j)));
  }
  return ElementarySubgroup::from_internal(ambient, cont.cols() > 0 ? cont : QMatrix(n, 0), internal);
}

ElementarySubgroup trivial_subgroup(const AmbientGroup& ambient) {
  return ElementarySubgroup::from_internal(ambient, QMatrix(ambient.dim(), 0), QMatrix(ambient.dim(), 0));
}

ElementarySubgroup full_subgroup(const AmbientGroup& ambient) {
  const std::size_t n = ambient.dim();
  std::vector<QVector> cont, disc;
  for (std::size_t i = 0; i < ambient.a; ++i) cont.push_back(unit(n, i));
  for (std::size_t i = 0; i < ambient.c; ++i) cont.push_back(unit(n, ambient.t_offset() + i));
  for (std::size_t i = 0; i < ambient.b; ++i) disc.push_back(unit(n, ambient.z_offset() + i));
  for (std::size_t i = 0; i < ambient.f(); ++i) {
    QVector v(n);
    v[ambient.f_offset() + i] = Rational(1, static_cast<long>(ambient.finite[i]));
    disc.push_back(v);
  }
  return ElementarySubgroup::from_internal(ambient, QMatrix::from_columns(n, cont), QMatrix::from_columns(n, disc));
}

namespace {

bool member_internal(const ElementarySubgroup& h, const QVector& x) {
  QVector p = project_along(h.subspace(), leading_rows(h.subspace()), x);
  return in_lattice(h.lattice(), p);
}

}  // namespace

bool member(const ElementarySubgroup& h, const QVector& x) {
  return member_internal(h, to_internal(h.ambient(), x));
}

bool contains(const ElementarySubgroup& k, const ElementarySubgroup& h) {
  require_same_ambient(k, h);
  auto leads = leading_rows(k.subspace());
  for (std::size_t j = 0; j < h.subspace().cols(); ++j) {
    if (!is_zero(project_along(k.subspace(), leads, h.subspace().column(j)))) return false;
  }
  for (std::size_t j = 0; j < h.lattice().cols(); ++j) {
    if (!member_internal(k, h.lattice().column(j))) return false;
  }
  return true;
}

ElementarySubgroup sum(const ElementarySubgroup& h1, const ElementarySubgroup& h2) {
  require_same_ambient(h1, h2);
  return ElementarySubgroup::from_internal(h1.ambient(), h1.subspace().hconcat(h2.subspace()),
                                           h1.lattice().hconcat(h2.lattice()));
}

ElementarySubgroup intersect(const ElementarySubgroup& h1, const ElementarySubgroup& h2) {
  require_same_ambient(h1, h2);
  return orthogonal(sum(orthogonal(h1), orthogonal(h2)));
}

namespace {

// The pairing of G with its dual is <x, y> = x^T J y in internal
// coordinates. Given z = J y this recovers y.
QVector dual_coordinates(const AmbientGroup& g, const QVector& z) {
  const AmbientGroup d = g.dual();
  QVector y(d.dim());
  for (std::size_t i = 0; i < g.a; ++i) y[i] = z[i];
  for (std::size_t i = 0; i < g.c; ++i) y[d.z_offset() + i] = z[g.t_offset() + i];
  for (std::size_t i = 0; i < g.b; ++i) y[d.t_offset() + i] = z[g.z_offset() + i];
  for (std::size_t i = 0; i < g.f(); ++i) {
    y[d.f_offset() + i] = z[g.f_offset() + i] / static_cast<long>(g.finite[i]);
  }
  return y;
}

QMatrix map_columns(const QMatrix& m, std::size_t rows, const std::function<QVector(const QVector&)>& fn) {
  QMatrix out(rows, m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out.set_column(j, fn(m.column(j)));
  return out;
}

}  // namespace

ElementarySubgroup orthogonal(const ElementarySubgroup& h) {
  const AmbientGroup& g = h.ambient();
  const AmbientGroup d = g.dual();
  const std::size_t n = g.dim();
  const std::size_t k = h.subspace().cols();
  const std::size_t r = h.lattice().cols();
  QMatrix m = h.subspace().hconcat(h.lattice());
  if (m.cols() == 0) m = QMatrix(n, 0);

  QMatrix annihilator = m.cols() == 0 ? QMatrix::identity(n) : kernel_basis(m.transpose());
  QMatrix dual_lat(n, 0);
  if (r > 0) {
    QMatrix dual_basis = m * *inverse(m.transpose() * m);
    dual_lat = dual_basis.select_columns(k, r);
  }
  auto to_dual = [&](const QVector& z) { return dual_coordinates(g, z); };
  return ElementarySubgroup::from_internal(d, map_columns(annihilator, n, to_dual), map_columns(dual_lat, n, to_dual));
}

GroupDescriptor quotient_descriptor(const AmbientGroup& g, const ElementarySubgroup& h) {
  if (!(g == h.ambient())) throw AmbientMismatchError();
  std::vector<bool> is_lead(g.dim(), false);
  for (auto l : leading_rows(h.subspace())) is_lead[l] = true;
  std::vector<std::size_t> cont_rows;
  for (std::size_t i = 0; i < g.a; ++i) {
    if (!is_lead[i]) cont_rows.push_back(i);
  }
  for (std::size_t i = g.t_offset(); i < g.f_offset(); ++i) {
    if (!is_lead[i]) cont_rows.push_back(i);
  }
  const std::size_t m = cont_rows.size();
  const std::size_t s = g.b + g.f();
  QMatrix gens(m + s, h.lattice().cols());
  for (std::size_t j = 0; j < h.lattice().cols(); ++j) {
    for (std::size_t i = 0; i < m; ++i) gens(i, j) = h.lattice()(cont_rows[i], j);
    for (std::size_t i = 0; i < g.b; ++i) gens(m + i, j) = h.lattice()(g.z_offset() + i, j);
    for (std::size_t i = 0; i < g.f(); ++i) {
      gens(m + g.b + i, j) = h.lattice()(g.f_offset() + i, j) * static_cast<long>(g.finite[i]);
    }
  }
  return cylinder_quotient(m, s, gens);
}

GroupDescriptor subgroup_descriptor(const ElementarySubgroup& h) {
  const AmbientGroup& g = h.ambient();
  const std::size_t n = g.dim();
  const std::size_t k = h.subspace().cols();
  const std::size_t r = h.lattice().cols();
  QMatrix m = h.subspace().hconcat(h.lattice());
  std::vector<QVector> coords;
  for (std::size_t i = g.t_offset(); i < n; ++i) {
    auto x = solve_full_column_rank(m, unit(n, i));
    coords.push_back(*x);
  }
  if (coords.empty()) return cylinder_quotient(k, r, QMatrix(k + r, 0));
  return cylinder_quotient(k, r, QMatrix::from_columns(k + r, coords));
}

bool is_isolated(const ElementarySubgroup& h) {
  return is_isolated(subgroup_descriptor(h), quotient_descriptor(h.ambient(), h));
}

bool is_open(const ElementarySubgroup& h) {
  return h.subspace().cols() == h.ambient().a + h.ambient().c;
}

bool is_compact(const ElementarySubgroup& h) {
  const AmbientGroup& g = h.ambient();
  auto free_of_rz = [&](const QMatrix& m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < g.a + g.b; ++i) {
        if (m(i, j) != 0) return false;
      }
    }
    return true;
  };
  return free_of_rz(h.subspace()) && free_of_rz(h.lattice());
}

namespace {

ElementarySubgroup restrict_open(const ElementarySubgroup& omega, const ElementarySubgroup& h) {
  const AmbientGroup& g = omega.ambient();
  if (!is_open(omega)) throw PreconditionError("Omega is not open");
  ElementarySubgroup inter = intersect(h, omega);

  // Gamma: the (Z, finite) part of Omega, finite rows scaled to integers.
  const std::size_t s = g.b + g.f();
  const std::size_t rho = omega.lattice().cols();
  auto discrete_part = [&](const QVector& x) {
    QVector v(s);
    for (std::size_t i = 0; i < g.b; ++i) v[i] = x[g.z_offset() + i];
    for (std::size_t i = 0; i < g.f(); ++i) v[g.b + i] = x[g.f_offset() + i] * static_cast<long>(g.finite[i]);
    return v;
  };
  QMatrix gamma(s, rho);
  for (std::size_t j = 0; j < rho; ++j) gamma.set_column(j, discrete_part(omega.lattice().column(j)));

  // Coordinates of n_i e_i (the finite units) in the Gamma basis.
  QMatrix units(rho, g.f());
  for (std::size_t i = 0; i < g.f(); ++i) {
    QVector e(s);
    e[g.b + i] = static_cast<long>(g.finite[i]);
    units.set_column(i, *solve_full_column_rank(gamma, e));
  }
  SmithForm sf = snf(units);

  std::vector<std::int64_t> orders;
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < g.f(); ++k) {
    if (sf.diagonal[k] > 1) {
      orders.push_back(sf.diagonal[k].get_num().get_si());
      kept.push_back(k);
    }
  }
  const std::size_t free_rank = rho - g.f();
  AmbientGroup target(g.a, free_rank, g.c, orders);

  auto map_point = [&](const QVector& x) {
    QVector y(target.dim());
    for (std::size_t i = 0; i < g.a; ++i) y[i] = x[i];
    for (std::size_t i = 0; i < g.c; ++i) y[target.t_offset() + i] = x[g.t_offset() + i];
    QVector w = *solve_full_column_rank(gamma, discrete_part(x));
    QVector t = sf.left * w;
    for (std::size_t i = 0; i < free_rank; ++i) y[target.z_offset() + i] = t[g.f() + i];
    for (std::size_t i = 0; i < kept.size(); ++i) {
      y[target.f_offset() + i] = t[kept[i]] / sf.diagonal[kept[i]];
    }
    return y;
  };
  return ElementarySubgroup::from_internal(target, map_columns(inter.subspace(), target.dim(), map_point),
                                           map_columns(inter.lattice(), target.dim(), map_point));
}

}  // namespace

ElementarySubgroup apply_natural_map(const NaturalMapSpec& spec, const ElementarySubgroup& h) {
  require_same_ambient(spec.parameter, h);
  if (spec.kind == NaturalMapKind::RestrictOpen) return restrict_open(spec.parameter, h);
  if (!is_compact(spec.parameter)) throw PreconditionError("K is not compact");
  return orthogonal(restrict_open(orthogonal(spec.parameter), orthogonal(h)));
}

ElementarySubgroup tau_scale(const ElementarySubgroup& h, const Rational& lam) {
  const AmbientGroup& g = h.ambient();
  if (g.a == 0) throw PreconditionError("tau_scale requires an R factor");
  if (lam <= 0) throw PreconditionError("scale must be positive");
  auto scale = [&](QMatrix m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < g.a; ++i) m(i, j) *= lam;
    }
    return m;
  };
  return ElementarySubgroup::from_internal(g, scale(h.subspace()), scale(h.lattice()));
}

ElementarySubgroup pathbase_limit(const ElementarySubgroup& h) {
  const AmbientGroup& g = h.ambient();
  const std::size_t n = g.dim();
  if (g.a == 0) throw PreconditionError("pathbase limit requires an R factor");
  auto keep_rows = [&](QMatrix m, std::size_t from, std::size_t to) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i < from || i >= to) m(i, j) = 0;
      }
    }
    return m;
  };
  ElementarySubgroup l1 =
      ElementarySubgroup::from_internal(g, keep_rows(h.subspace(), g.a, n), keep_rows(h.lattice(), g.a, n));

  std::vector<QVector> rk;
  for (std::size_t i = 0; i < g.a; ++i) rk.push_back(unit(n, i));
  for (std::size_t i = 0; i < g.c; ++i) rk.push_back(unit(n, g.t_offset() + i));
  ElementarySubgroup r_times_k =
      ElementarySubgroup::from_internal(g, QMatrix::from_columns(n, rk), QMatrix(n, 0));
  ElementarySubgroup inter = intersect(h, r_times_k);
  QMatrix w = keep_rows(inter.subspace().hconcat(inter.lattice()), 0, g.a);
  return ElementarySubgroup::from_internal(g, w.hconcat(l1.subspace()), l1.lattice());
}

ElementarySubgroup circle_path(std::int64_t n, const Rational& lam) {
  if (n < 2) throw PreconditionError("circle path requires n >= 2");
  if (lam <= 0) throw PreconditionError("scale must be positive");
  AmbientGroup g(1, 0, 0, {n});
  QMatrix disc{{lam, -lam / static_cast<long>(n)}, {0, 1}};
  return canonicalize(g, QMatrix(2, 0), disc);
}

ElementarySubgroup lattice_subgroup(const LatticeBasis& gamma) {
  AmbientGroup g(gamma.ambient_dim(), 0, 0);
  return ElementarySubgroup::from_internal(g, QMatrix(g.dim(), 0), gamma.basis());
}

ElementarySubgroup apply_linear(const QMatrix& a, const ElementarySubgroup& h) {
  const AmbientGroup& g = h.ambient();
  if (g.b != 0 || g.c != 0 || g.f() != 0) throw PreconditionError("linear action requires ambient R^d");
  if (a.rows() != g.a || a.cols() != g.a) throw PreconditionError("matrix dimension mismatch");
  if (determinant(a) == 0) throw PreconditionError("singular linear map");
  return ElementarySubgroup::from_internal(g, a * h.subspace(), a * h.lattice());
}

ElementarySubgroup perturb_sequence(const LatticeBasis& gamma, const QMatrix& direction, std::int64_t n) {
  if (n < 1) throw PreconditionError("sequence index must be positive");
  const std::size_t d = gamma.ambient_dim();
  if (direction.rows() != d || direction.cols() != d) throw PreconditionError("direction dimension mismatch");
  QMatrix a = QMatrix::identity(d) + Rational(1, static_cast<long>(n)) * direction;
  if (determinant(a) == 0) throw PreconditionError("singular perturbation at this n");
  return apply_linear(a, lattice_subgroup(gamma));
}

std::uint64_t component_of(const AmbientGroup& g, const ElementarySubgroup& h) {
  if (g.a != 0) throw PreconditionError("component structure requires R(G)=0");
  if (!(g == h.ambient())) throw AmbientMismatchError();
  QMatrix z_image(g.b, h.lattice().cols());
  for (std::size_t i = 0; i < g.b; ++i) {
    for (std::size_t j = 0; j < h.lattice().cols(); ++j) z_image(i, j) = h.lattice()(g.z_offset() + i, j);
  }
  const std::uint64_t r = rank(z_image);
  const std::uint64_t s = g.c - h.subspace().cols();
  return hom_compact_descriptor(r, s).count(AtomKind::Torus1);
}

}  // namespace chabauty
