#include "diffalg/repmodules.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "diffalg/actions.hpp"
#include "diffalg/errors.hpp"

namespace diffalg {

namespace {

QuotElem zero_a() { return QuotElem::from_nf(Ring::A, DiffPoly()); }
QuotElem one_a() { return QuotElem::from_nf(Ring::A, DiffPoly(1)); }

QuotMatrix zero_qmatrix(std::size_t r, std::size_t c) {
  return QuotMatrix(r, std::vector<QuotElem>(c, zero_a()));
}

// A * P for a coaction-like matrix A and a K-matrix P.
QuotMatrix mul(const QuotMatrix& a, const KMatrix& p) {
  std::size_t n = a.size(), k = p.rows(), m = p.cols();
  QuotMatrix r = zero_qmatrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      PolyBuilder acc;
      for (std::size_t l = 0; l < k; ++l)
        if (!is_zero(p(l, j)) && !a[i][l].is_zero()) acc.add(a[i][l].nf(), p(l, j));
      r[i][j] = QuotElem::from_nf(Ring::A, acc.build());
    }
  return r;
}

QuotMatrix mul(const KMatrix& p, const QuotMatrix& a) {
  std::size_t n = p.rows(), k = p.cols(), m = a.empty() ? 0 : a[0].size();
  QuotMatrix r = zero_qmatrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      PolyBuilder acc;
      for (std::size_t l = 0; l < k; ++l)
        if (!is_zero(p(i, l)) && !a[l][j].is_zero()) acc.add(a[l][j].nf(), p(i, l));
      r[i][j] = QuotElem::from_nf(Ring::A, acc.build());
    }
  return r;
}

// Linear system over K whose equations are "coefficient of a monomial in an
// A-valued expression vanishes": sum_col coeff * x_col + constant = 0.
class CoeffSystem {
 public:
  struct Solution {
    bool consistent = true;
    Vec<RatFunc> particular;
    std::vector<Vec<RatFunc>> kernel;
  };

  explicit CoeffSystem(std::size_t unknowns) : n_(unknowns) {}

  /// Adds scale * p to equation eq, multiplying unknown col (or the constant
  /// when col == unknowns()).
  void add(std::size_t eq, const DiffPoly& p, std::size_t col, const RatFunc& scale) {
    for (const auto& t : p.terms()) {
      RatFunc c = t.coeff * scale;
      if (!c.is_constant()) rational_ = false;
      auto& row = rows_[{eq, t.mono}];
      auto [it, inserted] = row.try_emplace(col, c);
      if (!inserted) it->second += c;
    }
  }
  std::size_t unknowns() const { return n_; }

  Solution solve() const { return rational_ ? solve_as<Rational>() : solve_as<RatFunc>(); }

 private:
  template <class F>
  static F convert(const RatFunc& c) {
    if constexpr (std::is_same_v<F, Rational>) return c.constant_value();
    else return c;
  }
  template <class F>
  static RatFunc back(const F& c) {
    if constexpr (std::is_same_v<F, Rational>) return RatFunc(c);
    else return c;
  }

  template <class F>
  Solution solve_as() const {
    Echelon<F> e(n_ + 1);
    for (const auto& [key, row] : rows_) {
      Vec<F> v(n_ + 1, F(0));
      bool any = false;
      for (const auto& [col, c] : row)
        if (!is_zero(c)) {
          v[col] = convert<F>(c);
          any = true;
        }
      if (!any) continue;
      e.add(std::move(v));
      if (e.rank() == n_ + 1) break;
    }
    Solution s;
    s.particular.assign(n_, RatFunc(0));
    for (auto p : e.pivots())
      if (p == n_) s.consistent = false;
    for (auto& y : e.nullspace()) {
      Vec<RatFunc> x(n_);
      for (std::size_t k = 0; k < n_; ++k) x[k] = back<F>(y[k]);
      if (!is_zero(y[n_])) s.particular = std::move(x);
      else s.kernel.push_back(std::move(x));
    }
    return s;
  }

  std::size_t n_;
  bool rational_ = true;
  std::map<std::pair<std::size_t, Monomial>, std::map<std::size_t, RatFunc>> rows_;
};

// Equations L Y - Y R + C = 0 for an unknown K-matrix Y of shape p x q.
CoeffSystem::Solution solve_intertwining(const QuotMatrix& l, const QuotMatrix& r, const QuotMatrix* c,
                                         std::size_t p, std::size_t q) {
  CoeffSystem sys(p * q);
  RatFunc one(1), minus(-1);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      std::size_t eq = i * q + j;
      for (std::size_t k = 0; k < p; ++k)
        if (!l[i][k].is_zero()) sys.add(eq, l[i][k].nf(), k * q + j, one);
      for (std::size_t k = 0; k < q; ++k)
        if (!r[k][j].is_zero()) sys.add(eq, r[k][j].nf(), i * q + k, minus);
      if (c && !(*c)[i][j].is_zero()) sys.add(eq, (*c)[i][j].nf(), p * q, one);
    }
  return sys.solve();
}

KMatrix unflatten(const Vec<RatFunc>& v, std::size_t p, std::size_t q) {
  KMatrix m(p, q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) m(i, j) = v[i * q + j];
  return m;
}

// Splits p = sum_mu mu * rest_mu where mu collects the factors in group `left`.
std::map<Monomial, DiffPoly> split_by_group(const DiffPoly& p, Group left) {
  std::map<Monomial, PolyBuilder> acc;
  for (const auto& t : p.terms()) {
    std::vector<Factor> l, rest;
    for (const auto& f : t.mono.factors()) (f.var().group == left ? l : rest).push_back(f);
    acc[Monomial::from_factors(std::move(l))].add(Monomial::from_factors(std::move(rest)), t.coeff);
  }
  std::map<Monomial, DiffPoly> out;
  for (auto& [m, b] : acc) {
    DiffPoly q = b.build();
    if (!q.is_zero()) out.emplace(m, std::move(q));
  }
  return out;
}

// Coaction from images rho(b_j) already in normal form, with the basis
// elements written in the variables of group `left`.
QuotMatrix coaction_from_images(const std::vector<DiffPoly>& basis, const std::vector<DiffPoly>& images,
                                Group left) {
  std::size_t n = basis.size();
  std::map<Monomial, Vec<RatFunc>> coords;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : basis[i].terms()) {
      auto [it, _] = coords.try_emplace(t.mono, Vec<RatFunc>(n, RatFunc(0)));
      it->second[i] = t.coeff;
    }
  Echelon<RatFunc> e(n);
  std::vector<const Monomial*> pivot_rows;
  for (const auto& [mu, row] : coords)
    if (e.add(row)) pivot_rows.push_back(&mu);
  if (e.rank() < n) throw Error(Errc::LinearlyDependent, "basis elements are linearly dependent");

  KMatrix b(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) b(r, i) = coords.at(*pivot_rows[r])[i];
  KMatrix binv = *inverse(b);

  QuotMatrix a = zero_qmatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto parts = split_by_group(images[j], left);
    for (std::size_t i = 0; i < n; ++i) {
      PolyBuilder acc;
      for (std::size_t r = 0; r < n; ++r) {
        auto it = parts.find(*pivot_rows[r]);
        if (it != parts.end() && !is_zero(binv(i, r))) acc.add(it->second, binv(i, r));
      }
      a[i][j] = QuotElem::from_nf(Ring::A, acc.build());
    }
    // Every left monomial must be accounted for by the solved coefficients.
    std::map<Monomial, PolyBuilder> residual;
    for (const auto& [mu, g] : parts) residual[mu].add(g, RatFunc(-1));
    for (const auto& [mu, row] : coords)
      for (std::size_t i = 0; i < n; ++i)
        if (!is_zero(row[i]) && !a[i][j].is_zero()) residual[mu].add(a[i][j].nf(), row[i]);
    for (auto& [mu, acc] : residual) {
      DiffPoly res = -acc.build();
      if (res.is_zero()) continue;
      if (groebner_fallback() && groebner_member(res, Ring::A)) continue;
      throw Error(Errc::NotClosed, "image leaves the span; witness " + mu.to_string() + " (x) (" +
                                       res.to_string() + ")");
    }
  }
  return a;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(Errc::DimensionMismatch, what);
}

struct Blocks {
  FinModule changed;
  std::size_t k;
};

// Changes basis to P and checks that the first k columns span a submodule.
Blocks adapted_blocks(const FinModule& m, const KMatrix& p, std::size_t k) {
  FinModule c = change_basis(m, p);
  for (std::size_t i = k; i < c.dim(); ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!c.entry(i, j).is_zero())
        throw Error(Errc::NotASubmodule, "subspace is not closed under the coaction (entry " +
                                             std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  return Blocks{std::move(c), k};
}

FinModule sub_block(const FinModule& m, std::size_t from, std::size_t to, bool keep_basis) {
  QuotMatrix a(to - from);
  for (std::size_t i = from; i < to; ++i)
    a[i - from].assign(m.coaction()[i].begin() + from, m.coaction()[i].begin() + to);
  std::optional<std::vector<DiffPoly>> basis;
  if (keep_basis && m.basis())
    basis = std::vector<DiffPoly>(m.basis()->begin() + from, m.basis()->begin() + to);
  return FinModule(std::move(a), std::move(basis));
}

Vec<RatFunc> unit(std::size_t n, std::size_t i) {
  Vec<RatFunc> v(n, RatFunc(0));
  v[i] = RatFunc(1);
  return v;
}

}  // namespace

FinModule::FinModule(QuotMatrix coaction, std::optional<std::vector<DiffPoly>> basis)
    : coaction_(std::move(coaction)), basis_(std::move(basis)) {
  for (const auto& row : coaction_) {
    require_same_dim(row.size(), coaction_.size(), "coaction matrix is not square");
    for (const auto& a : row)
      if (a.ring() != Ring::A) throw Error(Errc::DimensionMismatch, "coaction entries must lie in A");
  }
  if (basis_) require_same_dim(basis_->size(), coaction_.size(), "basis length differs from dimension");
}

std::string FinModule::to_string() const {
  std::ostringstream os;
  os << "module of dimension " << dim() << "\n";
  if (basis_) {
    os << "basis:";
    for (const auto& b : *basis_) os << " [" << b.to_string() << "]";
    os << "\n";
  }
  for (const auto& row : coaction_) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " | " : "  ") << row[j].to_string();
    os << "\n";
  }
  return os.str();
}

KMatrix SubmoduleDescr::matrix() const { return KMatrix::from_columns(vectors, ambient.dim()); }

FinModule trivial_module() { return FinModule(QuotMatrix{{one_a()}}, std::vector<DiffPoly>{DiffPoly(1)}); }

FinModule coaction_matrix(const std::vector<DiffPoly>& basis) {
  if (basis.empty()) throw Error(Errc::DimensionMismatch, "empty basis");
  std::vector<DiffPoly> images;
  for (const auto& b : basis) {
    for (const auto& t : b.terms())
      for (const auto& f : t.mono.factors())
        if (f.var().group != Group::Module)
          throw Error(Errc::DimensionMismatch, "basis elements must lie in K{x, y}");
    images.push_back(graded_nf(sl2_coaction(b), Ring::A));
  }
  return FinModule(coaction_from_images(basis, images, Group::Module), basis);
}

FinModule coaction_matrix_in_A(const std::vector<QuotElem>& elements) {
  if (elements.empty()) throw Error(Errc::DimensionMismatch, "empty basis");
  std::vector<DiffPoly> left, images;
  for (const auto& e : elements) {
    if (e.ring() != Ring::A) throw Error(Errc::DimensionMismatch, "elements must lie in A");
    left.push_back(rename_group(e.nf(), Group::GroupRight, Group::GroupLeft));
    images.push_back(graded_nf(comultiply_C(e.nf()), Ring::A));
  }
  return FinModule(coaction_from_images(left, images, Group::GroupLeft));
}

std::vector<DiffPoly> pdk_basis(int d, int k) {
  if (d < 0 || k < 0) throw Error(Errc::InvalidD, "degree and weight must be non-negative");
  // Variables x, y, x', y', ...; the exponent vectors are enumerated recursively.
  std::vector<Var> vars;
  for (int o = 0; o <= k; ++o) {
    vars.push_back(xvar(o));
    vars.push_back(yvar(o));
  }
  struct Entry {
    int weight;
    std::vector<int> exps;
  };
  std::vector<Entry> found;
  std::vector<int> exps(vars.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx, int left, int weight) -> void {
    if (idx == vars.size()) {
      if (left == 0) found.push_back({weight, exps});
      return;
    }
    int order = static_cast<int>(vars[idx].order);
    for (int e = left; e >= 0; --e) {
      if (weight + e * order > k) continue;
      exps[idx] = e;
      self(self, idx + 1, left - e, weight + e * order);
    }
    exps[idx] = 0;
  };
  rec(rec, 0, d, 0);
  std::stable_sort(found.begin(), found.end(), [](const Entry& a, const Entry& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.exps > b.exps;
  });
  std::vector<DiffPoly> out;
  for (const auto& en : found) {
    Monomial m;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (en.exps[i]) m = m.times(vars[i], en.exps[i]);
    out.push_back(DiffPoly::term(RatFunc(1), m));
  }
  return out;
}

FinModule construct_Pdk(int d, int k) { return coaction_matrix(pdk_basis(d, k)); }

FinModule construct_Ud(int d) {
  if (d < 1) throw Error(Errc::InvalidD, "U_d requires d >= 1, got " + std::to_string(d));
  std::vector<DiffPoly> basis = pdk_basis(d, 0);
  std::size_t n = basis.size();
  for (std::size_t i = 0; i < n; ++i) basis.push_back(poly_derive(basis[i]));
  return coaction_matrix(basis);
}

FinModule construct_Wd(int d) {
  if (d < 2) throw Error(Errc::InvalidD, "W_d requires d >= 2, got " + std::to_string(d));
  std::vector<DiffPoly> basis = pdk_basis(d, 0);
  DiffPoly w = xpoly(1) * ypoly() - xpoly() * ypoly(1);
  for (const auto& m : pdk_basis(d - 2, 0)) basis.push_back(w * m);
  return coaction_matrix(basis);
}

FinModule prolongation(const FinModule& m) {
  std::size_t n = m.dim();
  QuotMatrix a = zero_qmatrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = a[n + i][n + j] = m.entry(i, j);
      a[i][n + j] = m.entry(i, j).derivative();
    }
  std::optional<std::vector<DiffPoly>> basis;
  if (m.basis()) {
    basis = *m.basis();
    for (std::size_t i = 0; i < n; ++i) basis->push_back(poly_derive((*m.basis())[i]));
  }
  return FinModule(std::move(a), std::move(basis));
}

FinModule dual(const FinModule& m) {
  std::size_t n = m.dim();
  QuotMatrix a = zero_qmatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = antipode(m.entry(j, i));
  return FinModule(std::move(a));
}

FinModule direct_sum(const FinModule& a, const FinModule& b) {
  std::size_t n = a.dim(), k = b.dim();
  QuotMatrix c = zero_qmatrix(n + k, n + k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = a.entry(i, j);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) c[n + i][n + j] = b.entry(i, j);
  return FinModule(std::move(c));
}

bool is_equivariant(const KMatrix& f, const FinModule& m, const FinModule& n) {
  if (f.rows() != n.dim() || f.cols() != m.dim())
    throw Error(Errc::DimensionMismatch, "map shape does not match the modules");
  QuotMatrix lhs = mul(n.coaction(), f), rhs = mul(f, m.coaction());
  for (std::size_t i = 0; i < lhs.size(); ++i)
    for (std::size_t j = 0; j < lhs[i].size(); ++j)
      if (!(lhs[i][j] == rhs[i][j])) return false;
  return true;
}

FinModule change_basis(const FinModule& m, const KMatrix& p) {
  require_same_dim(p.rows(), m.dim(), "basis change has the wrong size");
  require_same_dim(p.cols(), m.dim(), "basis change has the wrong size");
  auto pinv = inverse(p);
  if (!pinv) throw Error(Errc::NotInvertible, "basis change matrix is singular");
  QuotMatrix a = mul(*pinv, mul(m.coaction(), p));
  std::optional<std::vector<DiffPoly>> basis;
  if (m.basis()) {
    basis.emplace();
    for (std::size_t j = 0; j < p.cols(); ++j) {
      PolyBuilder acc;
      for (std::size_t i = 0; i < p.rows(); ++i)
        if (!is_zero(p(i, j))) acc.add((*m.basis())[i], p(i, j));
      basis->push_back(acc.build());
    }
  }
  return FinModule(std::move(a), std::move(basis));
}

KMatrix adapted_basis(const SubmoduleDescr& s) {
  std::size_t n = s.ambient.dim();
  Echelon<RatFunc> e(n);
  std::vector<Vec<RatFunc>> cols;
  for (const auto& v : s.vectors) {
    require_same_dim(v.size(), n, "subspace vector has the wrong length");
    if (!e.add(v)) throw Error(Errc::LinearlyDependent, "subspace vectors are linearly dependent");
    cols.push_back(v);
  }
  for (std::size_t i = 0; i < n && cols.size() < n; ++i)
    if (e.add(unit(n, i))) cols.push_back(unit(n, i));
  return KMatrix::from_columns(cols, n);
}

void check_submodule(const SubmoduleDescr& s) { adapted_blocks(s.ambient, adapted_basis(s), s.dim()); }

FinModule restrict_to(const SubmoduleDescr& s) {
  if (s.vectors.empty()) throw Error(Errc::DimensionMismatch, "zero submodule has no coaction");
  Blocks b = adapted_blocks(s.ambient, adapted_basis(s), s.dim());
  return sub_block(b.changed, 0, b.k, true);
}

FinModule quotient_module(const SubmoduleDescr& s) {
  if (s.dim() == s.ambient.dim()) throw Error(Errc::DimensionMismatch, "quotient is zero");
  Blocks b = adapted_blocks(s.ambient, adapted_basis(s), s.dim());
  return sub_block(b.changed, b.k, b.changed.dim(), false);
}

FinModule pullback(const FinModule& m1, const FinModule& m2, const FinModule& w, const KMatrix& pi1,
                   const KMatrix& pi2) {
  if (!is_equivariant(pi1, m1, w) || !is_equivariant(pi2, m2, w))
    throw Error(Errc::NotEquivariant, "pull-back maps are not equivariant");
  if (rank(pi1) != w.dim() || rank(pi2) != w.dim())
    throw Error(Errc::NotSurjective, "pull-back maps are not surjective");
  std::size_t n1 = m1.dim(), n2 = m2.dim();
  std::vector<Vec<RatFunc>> vecs;
  auto embed = [&](const Vec<RatFunc>& a, const Vec<RatFunc>& b) {
    Vec<RatFunc> v(n1 + n2, RatFunc(0));
    std::copy(a.begin(), a.end(), v.begin());
    std::copy(b.begin(), b.end(), v.begin() + n1);
    return v;
  };
  Vec<RatFunc> z1(n1, RatFunc(0)), z2(n2, RatFunc(0));
  for (const auto& k : nullspace(pi1)) vecs.push_back(embed(k, z2));
  for (const auto& k : nullspace(pi2)) vecs.push_back(embed(z1, k));
  for (std::size_t i = 0; i < w.dim(); ++i) {
    Vec<RatFunc> e = unit(w.dim(), i);
    vecs.push_back(embed(*solve(pi1, e), *solve(pi2, e)));
  }
  return restrict_to(SubmoduleDescr{direct_sum(m1, m2), std::move(vecs)});
}

FinModule pushout(const FinModule& m1, const FinModule& m2, const FinModule& u, const KMatrix& iota1,
                  const KMatrix& iota2) {
  if (!is_equivariant(iota1, u, m1) || !is_equivariant(iota2, u, m2))
    throw Error(Errc::NotEquivariant, "push-out maps are not equivariant");
  if (rank(iota1) != u.dim() || rank(iota2) != u.dim())
    throw Error(Errc::NotInjective, "push-out maps are not injective");
  std::size_t n1 = m1.dim(), n2 = m2.dim(), k = u.dim(), n = n1 + n2;
  std::vector<Vec<RatFunc>> cols;
  for (std::size_t j = 0; j < k; ++j) {
    Vec<RatFunc> v(n, RatFunc(0));
    for (std::size_t i = 0; i < n1; ++i) v[i] = iota1(i, j);
    for (std::size_t i = 0; i < n2; ++i) v[n1 + i] = -iota2(i, j);
    cols.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < k; ++j) {
    Vec<RatFunc> v(n, RatFunc(0));
    for (std::size_t i = 0; i < n1; ++i) v[i] = iota1(i, j);
    cols.push_back(std::move(v));
  }
  auto complete = [&](const KMatrix& iota, std::size_t offset, std::size_t dim) {
    Echelon<RatFunc> e(dim);
    for (std::size_t j = 0; j < k; ++j) e.add(iota.column(j));
    for (std::size_t i = 0; i < dim; ++i)
      if (e.add(unit(dim, i))) cols.push_back(unit(n, offset + i));
  };
  complete(iota1, 0, n1);
  complete(iota2, n1, n2);
  Blocks b = adapted_blocks(direct_sum(m1, m2), KMatrix::from_columns(cols, n), k);
  return sub_block(b.changed, k, n, false);
}

SubmoduleDescr generated_submodule(const FinModule& m, const Vec<RatFunc>& v) {
  std::size_t n = m.dim();
  require_same_dim(v.size(), n, "vector has the wrong length");
  if (std::all_of(v.begin(), v.end(), [](const RatFunc& c) { return is_zero(c); }))
    throw Error(Errc::ZeroVector, "generated submodule of the zero vector");
  std::map<Monomial, Vec<RatFunc>> coeffs;
  for (std::size_t i = 0; i < n; ++i) {
    PolyBuilder acc;
    for (std::size_t j = 0; j < n; ++j)
      if (!is_zero(v[j])) acc.add(m.entry(i, j).nf(), v[j]);
    DiffPoly row = acc.build();
    for (const auto& t : row.terms()) {
      auto [it, _] = coeffs.try_emplace(t.mono, Vec<RatFunc>(n, RatFunc(0)));
      it->second[i] = t.coeff;
    }
  }
  Echelon<RatFunc> e(n);
  for (const auto& [mu, col] : coeffs) e.add(col);
  SubmoduleDescr s{m, e.rows()};
  check_submodule(s);
  return s;
}

std::vector<KMatrix> hom_space(const FinModule& m1, const FinModule& m2) {
  std::size_t p = m2.dim(), q = m1.dim();
  auto sol = solve_intertwining(m2.coaction(), m1.coaction(), nullptr, p, q);
  std::vector<KMatrix> out;
  for (const auto& k : sol.kernel) out.push_back(unflatten(k, p, q));
  return out;
}

SubmoduleDescr invariants(const FinModule& m) {
  SubmoduleDescr s{m, {}};
  Echelon<RatFunc> e(m.dim());
  for (const auto& t : hom_space(trivial_module(), m)) e.add(t.column(0));
  s.vectors = e.rows();
  return s;
}

LieAction const_lie_action(const FinModule& m) {
  std::size_t n = m.dim();
  DiffPoly tau = aux("tau"), u = aux("u");
  DiffPoly uinv = DiffPoly::term(RatFunc(1), Monomial::of(Var::make(Group::Aux, "u"), -1));
  Var tv = Var::make(Group::Aux, "tau"), uv = Var::make(Group::Aux, "u");
  Images upper = c_images(DiffPoly(1), tau, DiffPoly(), DiffPoly(1));
  Images lower = c_images(DiffPoly(1), DiffPoly(), tau, DiffPoly(1));
  Images diag = c_images(u, DiffPoly(), DiffPoly(), uinv);
  LieAction out{KMatrix(n, n), KMatrix(n, n), KMatrix(n, n)};
  auto linear_part = [&](const DiffPoly& p) {
    RatFunc c(0);
    for (const auto& t : p.terms()) {
      int e = t.mono.exponent(tv);
      if (e < 0 || t.mono.factors().size() > (e ? 1u : 0u))
        throw Error(Errc::NonPolynomialInTau, "entry is not polynomial in the group parameter: " +
                                                  p.to_string());
      if (e == 1) c += t.coeff;
    }
    return c;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const DiffPoly& a = m.entry(i, j).nf();
      out.e(i, j) = linear_part(substitute(a, upper));
      out.f(i, j) = linear_part(substitute(a, lower));
      RatFunc h(0);
      DiffPoly torus = substitute(a, diag);
      for (const auto& t : torus.terms()) {
        int k = t.mono.exponent(uv);
        if (t.mono.factors().size() > (k ? 1u : 0u))
          throw Error(Errc::NonPolynomialInTau,
                      "unexpected variables in torus restriction: " + a.to_string());
        h += t.coeff * RatFunc(k);
      }
      out.h(i, j) = h;
    }
  return out;
}

SubmoduleDescr socle(const FinModule& m) {
  std::size_t n = m.dim();
  LieAction lie = const_lie_action(m);
  Echelon<RatFunc> acc(n);
  for (std::size_t lambda = 0; lambda < n; ++lambda) {
    KMatrix stacked(2 * n, n);
    stacked.set_block(0, 0, lie.e);
    stacked.set_block(n, 0, lie.h - RatFunc(static_cast<long>(lambda)) * KMatrix::identity(n));
    if (nullspace(stacked).empty()) continue;
    FinModule simple = construct_Pdk(static_cast<int>(lambda), 0);
    for (const auto& t : hom_space(simple, m))
      for (std::size_t j = 0; j < t.cols(); ++j) acc.add(t.column(j));
  }
  return SubmoduleDescr{m, acc.rows()};
}

bool socle_is_simple(const FinModule& m) {
  SubmoduleDescr s = socle(m);
  if (s.dim() == 0) return false;
  LieAction lie = const_lie_action(restrict_to(s));
  return nullspace(lie.e).size() == 1;
}

FinModule socle_first(const FinModule& m) {
  SubmoduleDescr s = socle(m);
  if (s.dim() == 0) throw Error(Errc::SocleNotSimple, "module has zero socle");
  return change_basis(m, adapted_basis(s));
}

std::vector<QuotElem> first_row_embed(const FinModule& m) {
  if (!socle_is_simple(m)) throw Error(Errc::SocleNotSimple, "socle is not simple");
  SubmoduleDescr s = socle(m);
  std::size_t k = s.dim(), n = m.dim();
  for (const auto& v : s.vectors)
    for (std::size_t i = k; i < n; ++i)
      if (!is_zero(v[i]))
        throw Error(Errc::NotASubmodule, "leading basis vectors do not span the socle");
  std::vector<QuotElem> row(m.coaction()[0]);
  if (std::all_of(row.begin(), row.begin() + static_cast<long>(k), [](const QuotElem& a) { return a.is_zero(); }))
    throw Error(Errc::ZeroOnSocle, "first row vanishes on the socle");
  CoeffSystem sys(n);
  for (std::size_t j = 0; j < n; ++j) sys.add(0, row[j].nf(), j, RatFunc(1));
  if (!sys.solve().kernel.empty())
    throw Error(Errc::PostconditionFailed, "first-row entries are linearly dependent");
  return row;
}

std::optional<KMatrix> iso_test(const FinModule& m1, const FinModule& m2, std::uint64_t seed) {
  if (m1.dim() != m2.dim()) return std::nullopt;
  auto basis = hom_space(m1, m2);
  if (basis.empty()) return std::nullopt;
  return random_invertible_combination(basis, seed);
}

std::optional<KMatrix> split_test(const SubmoduleDescr& s) {
  std::size_t n = s.ambient.dim(), k = s.dim(), q = n - k;
  if (q == 0) return KMatrix(n, 0);
  KMatrix p = adapted_basis(s);
  Blocks b = adapted_blocks(s.ambient, p, k);
  QuotMatrix as(k), aq(q), x(k);
  const QuotMatrix& a = b.changed.coaction();
  for (std::size_t i = 0; i < k; ++i) {
    as[i].assign(a[i].begin(), a[i].begin() + static_cast<long>(k));
    x[i].assign(a[i].begin() + static_cast<long>(k), a[i].end());
  }
  for (std::size_t i = 0; i < q; ++i) aq[i].assign(a[k + i].begin() + static_cast<long>(k), a[k + i].end());
  auto sol = solve_intertwining(as, aq, &x, k, q);
  if (!sol.consistent) return std::nullopt;
  KMatrix y = unflatten(sol.particular, k, q);
  KMatrix stacked(n, q);
  stacked.set_block(0, 0, y);
  stacked.set_block(k, 0, KMatrix::identity(q));
  return p * stacked;
}

int module_degree(const FinModule& m) {
  int d = 0;
  for (const auto& row : m.coaction())
    for (const auto& a : row)
      if (!a.is_zero()) d = std::max(d, deg_quot(a));
  return d;
}

bool is_homogeneous(const std::vector<QuotElem>& elements) {
  int d = 0;
  for (const auto& e : elements)
    if (!e.is_zero()) d = std::max(d, deg_quot(e));
  // A combination has degree d iff its degree-d part survives, so the
  // elements are homogeneous iff taking top parts loses no rank.
  CoeffSystem full(elements.size()), top(elements.size());
  for (std::size_t j = 0; j < elements.size(); ++j) {
    full.add(0, elements[j].nf(), j, RatFunc(1));
    if (!elements[j].is_zero())
      top.add(0, project_homogeneous(elements[j], d).nf(), j, RatFunc(1));
  }
  return full.solve().kernel.size() == top.solve().kernel.size();
}

ComoduleReport check_comodule(const FinModule& m) {
  std::size_t n = m.dim();
  QMatrix id = QMatrix::identity(2);
  auto where = [](std::size_t i, std::size_t j) {
    return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatFunc v = evaluate_at_matrix(m.entry(i, j).nf(), id);
      if (v != RatFunc(i == j ? 1 : 0)) return {false, "counit fails at " + where(i, j)};
    }
  std::vector<std::vector<DiffPoly>> left(n, std::vector<DiffPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      left[i][j] = rename_group(m.entry(i, j).nf(), Group::GroupRight, Group::GroupLeft);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      DiffPoly lhs = comultiply_C(m.entry(i, j).nf());
      PolyBuilder acc;
      for (std::size_t k = 0; k < n; ++k)
        if (!left[i][k].is_zero() && !m.entry(k, j).is_zero()) acc.add(left[i][k] * m.entry(k, j).nf());
      DiffPoly rhs = acc.build();
      if (lhs == rhs) continue;
      if (graded_nf(lhs, Ring::A) == graded_nf(rhs, Ring::A)) continue;
      return {false, "coassociativity fails at " + where(i, j)};
    }
  return {};
}

}  // namespace diffalg
