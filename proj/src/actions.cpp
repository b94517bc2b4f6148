#include "diffalg/actions.hpp"

#include <functional>

#include "diffalg/errors.hpp"
#include "diffalg/ordering.hpp"
#include "diffalg/quotient.hpp"

namespace diffalg {

PolyMatrix poly_identity(std::size_t n) {
  PolyMatrix m(n, std::vector<DiffPoly>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = DiffPoly(1);
  return m;
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  PolyMatrix r(n, std::vector<DiffPoly>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      PolyBuilder acc;
      for (std::size_t l = 0; l < k; ++l)
        if (!a[i][l].is_zero() && !b[l][j].is_zero()) acc.add(a[i][l] * b[l][j]);
      r[i][j] = acc.build();
    }
  return r;
}

PolyMatrix poly_matrix(const KMatrix& m) {
  PolyMatrix r(m.rows(), std::vector<DiffPoly>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = DiffPoly(m(i, j));
  return r;
}

DiffPoly sl2_coaction(const DiffPoly& f, Group g) {
  DiffPoly x = xpoly(), y = ypoly();
  Images img{{base_name(Group::Module, "x"), x * cpoly(1, 1, 0, g) + y * cpoly(2, 1, 0, g)},
             {base_name(Group::Module, "y"), x * cpoly(1, 2, 0, g) + y * cpoly(2, 2, 0, g)}};
  return substitute_partial(f, img);
}

DiffPoly comultiply_C(const DiffPoly& f) {
  auto delta = [](int i, int j) {
    return cpoly(i, 1, 0, Group::GroupLeft) * cpoly(1, j) + cpoly(i, 2, 0, Group::GroupLeft) * cpoly(2, j);
  };
  return substitute_partial(f, c_images(delta(1, 1), delta(1, 2), delta(2, 1), delta(2, 2)));
}

DiffPoly gm_coaction(const DiffPoly& f, Group g) {
  Var z = Var::make(g, "z");
  Images img{{base_name(Group::Module, "x"), xpoly() * DiffPoly::variable(z)},
             {base_name(Group::Module, "y"), ypoly() * DiffPoly::term(RatFunc(1), Monomial::of(z, -1))}};
  return substitute_partial(f, img);
}

DiffPoly gm_evaluate(const DiffPoly& f, const RatFunc& a) {
  if (a.is_zero()) throw Error(Errc::ZeroScalar, "torus evaluation at 0");
  Images img{{base_name(Group::Module, "x"), DiffPoly(a) * xpoly()},
             {base_name(Group::Module, "y"), DiffPoly(a.inverse()) * ypoly()}};
  return substitute_partial(f, img);
}

MaxWitness lemma_max_witness(const Term& h, const RatFunc& a) {
  DiffPoly hp = DiffPoly::term(h.coeff, h.mono);
  long w = weight(h);
  if (w == 0) throw Error(Errc::ZeroWeight, "term " + hp.to_string() + " has weight 0");
  RatFunc da = a.derivative();
  if (da.is_zero()) throw Error(Errc::NonConstantRequired, "a' = 0 for a = " + a.to_string());
  long d = dvalue(h);
  DiffPoly residual = gm_evaluate(hp, a) - hp * a.pow(d);

  // Smallest positive order among x-factors, else among y-factors.
  const std::uint32_t xs = intern_symbol("x"), ys = intern_symbol("y");
  std::optional<Factor> pick;
  bool x_branch = false;
  for (std::uint32_t sym : {xs, ys}) {
    for (const auto& f : h.mono.factors()) {
      Var v = f.var();
      if (v.group != Group::Module || v.sym != sym || v.order == 0) continue;
      if (!pick || v.order < pick->var().order) pick = f;
    }
    if (pick) {
      x_branch = sym == xs;
      break;
    }
  }
  Var v = pick->var();
  long m = pick->exp, p = v.order;
  RatFunc coeff = h.coeff * RatFunc(m * p) * a.pow(d - 1) * da;
  if (!x_branch) coeff = -coeff;
  Term htilde{coeff, h.mono.times(v, -1).times(Var{v.group, v.sym, v.order - 1}, 1)};

  auto fail = [&](const std::string& why) {
    throw Error(Errc::PostconditionFailed, "weight-lowering witness for " + hp.to_string() + ": " + why);
  };
  if (residual.is_zero() || weight(residual) != w - 1) fail("residual weight is not wt(h) - 1");
  if (!(residual.coeff(htilde.mono) == htilde.coeff))
    fail("htilde " + DiffPoly::term(htilde.coeff, htilde.mono).to_string() + " not in residual " +
         residual.to_string());
  if (compare_terms(htilde, h) != TermCmp::Less) fail("htilde is not smaller than h");
  for (const auto& t : residual.terms())
    if (!(t.mono == htilde.mono) && compare_terms(t, htilde) != TermCmp::Less)
      fail("residual term " + t.mono.to_string() + " is not below htilde");
  return MaxWitness{std::move(residual), std::move(htilde)};
}

std::optional<Monomial> maximality_counterexample(const Term& h, const Term& htilde, int extra_degree) {
  int max_ord = max_order(DiffPoly::term(RatFunc(1), h.mono));
  int max_deg = h.mono.total_degree() + extra_degree;
  long d = dvalue(h);
  std::vector<Var> vars;
  for (int k = 0; k <= max_ord; ++k) {
    vars.push_back(xvar(static_cast<std::uint32_t>(k)));
    vars.push_back(yvar(static_cast<std::uint32_t>(k)));
  }
  std::optional<Monomial> found;
  std::function<void(std::size_t, int, Monomial)> rec = [&](std::size_t idx, int left, Monomial cur) {
    if (found) return;
    if (idx == vars.size()) {
      Term f{RatFunc(1), cur};
      if (dvalue(f) != d) return;
      if (compare_terms(f, h) == TermCmp::Less && compare_terms(f, htilde) == TermCmp::Greater)
        found = cur;
      return;
    }
    for (int e = 0; e <= left && !found; ++e) rec(idx + 1, left - e, cur.times(vars[idx], e));
  };
  rec(0, max_deg, Monomial());
  return found;
}

std::vector<std::string> torus_var_names(int n) {
  if (n == 1) return {"x"};
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::vector<DiffPoly> log_derivative(const std::vector<std::string>& vars) {
  std::vector<DiffPoly> out;
  for (const auto& name : vars) {
    Var v = Var::make(Group::Module, name);
    out.push_back(DiffPoly::term(RatFunc(1), Monomial::of(v.derived(), 1) * Monomial::of(v, -1)));
  }
  return out;
}

std::vector<DiffPoly> log_derivative(int n) { return log_derivative(torus_var_names(n)); }

NilArray::NilArray(int n, std::size_t r, std::map<std::pair<int, int>, KMatrix> entries)
    : n_(n), r_(r) {
  for (auto& [key, m] : entries) {
    if (key.first < 1 || key.first > n || key.second < 0)
      throw Error(Errc::DimensionMismatch, "array index out of range");
    if (m.rows() != r || m.cols() != r) throw Error(Errc::DimensionMismatch, "array entry is not r x r");
    if (m.is_zero()) continue;
    if (!is_nilpotent(m))
      throw Error(Errc::NotNilpotent, "N_{" + std::to_string(key.first) + "," +
                                          std::to_string(key.second) + "} is not nilpotent");
    entries_.emplace(key, m);
  }
  for (auto a = entries_.begin(); a != entries_.end(); ++a)
    for (auto b = std::next(a); b != entries_.end(); ++b)
      if (!commutator(a->second, b->second).is_zero())
        throw Error(Errc::NotCommuting, "array entries do not commute");
}

int NilArray::max_j() const {
  int j = -1;
  for (const auto& [key, m] : entries_) j = std::max(j, key.second);
  return j;
}

PolyMatrix ga_rep(const NilArray& N, const std::vector<std::string>& vars) {
  std::size_t r = N.r();
  if (static_cast<int>(vars.size()) != N.n()) throw Error(Errc::DimensionMismatch, "variable count");
  PolyMatrix S(r, std::vector<DiffPoly>(r));
  for (const auto& [key, m] : N.entries()) {
    DiffPoly v = DiffPoly::variable(Var::make(Group::Module, vars[key.first - 1],
                                              static_cast<std::uint32_t>(key.second)));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        if (!m(a, b).is_zero()) S[a][b] += DiffPoly(m(a, b)) * v;
  }
  PolyMatrix result = poly_identity(r), power = poly_identity(r);
  Rational fact = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    power = poly_mul(power, S);
    bool zero = true;
    for (const auto& row : power)
      for (const auto& e : row) zero = zero && e.is_zero();
    if (zero) break;
    fact *= static_cast<long>(k);
    RatFunc inv(Rational(1 / fact));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) result[a][b] += power[a][b] * inv;
  }
  return result;
}

PolyMatrix ga_rep(const NilArray& N) { return ga_rep(N, torus_var_names(N.n())); }

}  // namespace diffalg
