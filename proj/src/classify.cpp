#include "diffalg/classify.hpp"

#include <map>
#include <set>

#include "diffalg/errors.hpp"

namespace diffalg {

namespace {

std::vector<std::string> resolved_vars(const GmRep& rep) {
  std::vector<std::string> vars = rep.vars.empty() ? torus_var_names(rep.n) : rep.vars;
  if (static_cast<int>(vars.size()) != rep.n) throw Error(Errc::DimensionMismatch, "variable count differs from n");
  return vars;
}

std::vector<std::string> ga_names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

bool is_zero_matrix(const PolyMatrix& m) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

PolyMatrix minus_identity(PolyMatrix m) {
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= DiffPoly(1);
  return m;
}

PolyMatrix block(const PolyMatrix& m, std::size_t from, std::size_t size) {
  PolyMatrix b(size, std::vector<DiffPoly>(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) b[i][j] = m[from + i][from + j];
  return b;
}

// Multi-degree of a monomial in the torus variables (derivatives count).
std::vector<int> multidegree(const Monomial& m, const std::vector<std::uint32_t>& syms) {
  std::vector<int> d(syms.size(), 0);
  for (const auto& f : m.factors()) {
    Var v = f.var();
    for (std::size_t i = 0; i < syms.size(); ++i)
      if (v.group == Group::Module && v.sym == syms[i]) d[i] += f.exp;
  }
  return d;
}

Images constant_point(const std::vector<std::string>& vars, const std::vector<long>& values) {
  Images img;
  for (std::size_t i = 0; i < vars.size(); ++i)
    img[base_name(Group::Module, vars[i])] = DiffPoly(RatFunc(values[i]));
  return img;
}

const std::vector<long>& primes() {
  static const std::vector<long> p = {2, 3, 5, 7, 11, 13, 17, 19};
  return p;
}

// Coefficients c with sum_k c_k basis_k = target, if any.
std::optional<Vec<RatFunc>> express(const std::vector<DiffPoly>& basis, const DiffPoly& target) {
  std::map<Monomial, std::size_t> index;
  auto idx = [&](const Monomial& m) { return index.try_emplace(m, index.size()).first->second; };
  for (const auto& b : basis)
    for (const auto& t : b.terms()) idx(t.mono);
  for (const auto& t : target.terms()) idx(t.mono);
  KMatrix a(index.size(), basis.size());
  Vec<RatFunc> rhs(index.size(), RatFunc(0));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& t : basis[k].terms()) a(index.at(t.mono), k) = t.coeff;
  for (const auto& t : target.terms()) rhs[index.at(t.mono)] = t.coeff;
  return solve(a, rhs);
}

}  // namespace

PolyMatrix synthesize_gm(const std::vector<int>& d, const NilArray& N, const std::vector<std::string>& vars) {
  if (static_cast<int>(d.size()) != N.n() || static_cast<int>(vars.size()) != N.n())
    throw Error(Errc::DimensionMismatch, "degree vector, array and variables disagree on n");
  auto ga = ga_names(N.n());
  PolyMatrix u = ga_rep(N, ga);
  auto lambda = log_derivative(vars);
  Images img;
  for (int i = 0; i < N.n(); ++i) img[base_name(Group::Module, ga[i])] = lambda[i];
  Monomial chi;
  for (int i = 0; i < N.n(); ++i)
    if (d[i]) chi = chi.times(Var::make(Group::Module, vars[i]), d[i]);
  for (auto& row : u)
    for (auto& e : row) e = substitute_partial(e, img).times_monomial(chi);
  return u;
}

std::vector<GmComponent> classify_gm(const GmRep& rep) {
  auto vars = resolved_vars(rep);
  std::size_t r = rep.matrix.size();
  for (const auto& row : rep.matrix)
    if (row.size() != r) throw Error(Errc::DimensionMismatch, "representation matrix is not square");
  if (rep.n > static_cast<int>(primes().size())) throw Error(Errc::DimensionMismatch, "too many torus factors");
  std::vector<std::uint32_t> syms;
  for (const auto& v : vars) syms.push_back(intern_symbol(v));

  // Constant points act semisimply with eigenvalue chi^d(p) on the d-component;
  // distinct primes make chi^d(p) determine d.
  std::set<std::vector<int>> candidates;
  for (const auto& row : rep.matrix)
    for (const auto& e : row)
      for (const auto& t : e.terms()) candidates.insert(multidegree(t.mono, syms));
  std::vector<long> point(primes().begin(), primes().begin() + rep.n);
  Images at = constant_point(vars, point);
  KMatrix g(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g(i, j) = substitute(rep.matrix[i][j], at).constant_value();

  std::vector<Vec<RatFunc>> cols;
  std::vector<std::pair<std::vector<int>, std::size_t>> parts;
  for (const auto& d : candidates) {
    RatFunc ev(1);
    for (int i = 0; i < rep.n; ++i) ev *= RatFunc(point[i]).pow(d[i]);
    auto space = nullspace(g - ev * KMatrix::identity(r));
    if (space.empty()) continue;
    parts.emplace_back(d, space.size());
    for (auto& v : space) cols.push_back(std::move(v));
  }
  if (cols.size() != r)
    throw Error(Errc::NotUnipotentAfterTwist, "constant points do not act semisimply with character eigenvalues");
  KMatrix p = KMatrix::from_columns(cols, r);
  KMatrix pinv = *inverse(p);
  PolyMatrix changed = poly_mul(poly_matrix(pinv), poly_mul(rep.matrix, poly_matrix(p)));

  std::vector<std::size_t> part_of;
  for (std::size_t k = 0; k < parts.size(); ++k) part_of.insert(part_of.end(), parts[k].second, k);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (part_of[i] != part_of[j] && !changed[i][j].is_zero())
        throw Error(Errc::NotUnipotentAfterTwist, "isotypic components are not invariant");

  std::vector<GmComponent> out;
  std::size_t from = 0;
  for (const auto& [d, size] : parts) {
    Monomial twist;
    for (int i = 0; i < rep.n; ++i)
      if (d[i]) twist = twist.times(Var::make(Group::Module, vars[i]), -d[i]);
    PolyMatrix u = block(changed, from, size);
    for (auto& row : u)
      for (auto& e : row) e = e.times_monomial(twist);
    PolyMatrix nil = minus_identity(u);
    PolyMatrix power = nil;
    for (std::size_t k = 1; k < size; ++k) power = poly_mul(power, nil);
    if (!is_zero_matrix(power))
      throw Error(Errc::NotUnipotentAfterTwist, "component is not unipotent after removing its character");

    // log(1 + X) = X - X^2/2 + ..., finite since X is nilpotent.
    PolyMatrix log(size, std::vector<DiffPoly>(size));
    power = nil;
    for (std::size_t k = 1; k < size + 1 && !is_zero_matrix(power); ++k) {
      RatFunc c(Rational((k % 2 ? 1 : -1), static_cast<long>(k)));
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) log[a][b] += power[a][b] * c;
      power = poly_mul(power, nil);
    }

    int top = 0;
    for (const auto& row : log)
      for (const auto& e : row) top = std::max(top, max_order(e));
    int jmax = top - 1;
    std::vector<DiffPoly> phis;
    std::vector<std::pair<int, int>> keys;
    auto lambda = log_derivative(vars);
    for (int i = 0; i < rep.n; ++i) {
      DiffPoly phi = lambda[i];
      for (int j = 0; j <= jmax; ++j) {
        phis.push_back(phi);
        keys.emplace_back(i + 1, j);
        phi = poly_derive(phi);
      }
    }
    std::map<std::pair<int, int>, KMatrix> entries;
    for (const auto& k : keys) entries.emplace(k, KMatrix(size, size));
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b) {
        if (log[a][b].is_zero()) continue;
        auto c = express(phis, log[a][b]);
        if (!c)
          throw Error(Errc::LogExpressionFailure,
                      "logarithm entry is not a combination of d^j(x_i'/x_i): " + log[a][b].to_string());
        for (std::size_t k = 0; k < keys.size(); ++k) entries.at(keys[k])(a, b) = (*c)[k];
      }
    NilArray N(rep.n, size, std::move(entries));
    if (!(synthesize_gm(d, N, vars) == block(changed, from, size)))
      throw Error(Errc::PostconditionFailed, "re-synthesized component differs from the input");
    out.push_back(GmComponent{d, std::move(N), p.block(0, from, r, size)});
    from += size;
  }
  return out;
}

std::optional<KMatrix> nilarray_equiv(const NilArray& N, const NilArray& M, std::uint64_t seed) {
  if (N.n() != M.n() || N.r() != M.r()) throw Error(Errc::DimensionMismatch, "arrays have different shapes");
  std::size_t r = N.r();
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, _] : N.entries()) keys.insert(k);
  for (const auto& [k, _] : M.entries()) keys.insert(k);
  KMatrix zero(r, r);
  auto get = [&](const NilArray& a, const std::pair<int, int>& k) -> const KMatrix& {
    auto it = a.entries().find(k);
    return it == a.entries().end() ? zero : it->second;
  };
  // Q N - M Q = 0, unknown Q(a, b) at index a * r + b.
  Echelon<RatFunc> e(r * r);
  for (const auto& k : keys) {
    const KMatrix& n = get(N, k);
    const KMatrix& m = get(M, k);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        Vec<RatFunc> row(r * r, RatFunc(0));
        for (std::size_t l = 0; l < r; ++l) {
          row[i * r + l] += n(l, j);
          row[l * r + j] -= m(i, l);
        }
        e.add(std::move(row));
      }
  }
  std::vector<KMatrix> basis;
  for (const auto& v : e.nullspace()) {
    KMatrix q(r, r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) q(a, b) = v[a * r + b];
    basis.push_back(std::move(q));
  }
  if (basis.empty()) return std::nullopt;
  return random_invertible_combination(basis, seed);
}

const char* ext_tag_name(ExtTag t) {
  switch (t) {
    case ExtTag::Ud: return "Ud";
    case ExtTag::Wd: return "Wd";
    case ExtTag::WdDual: return "Wd_dual";
    case ExtTag::Split: return "split";
  }
  return "?";
}

ExtClassification classify_extension(const FinModule& m) {
  std::size_t n = m.dim();
  SubmoduleDescr soc = socle(m);
  if (soc.dim() == n) {
    // Semisimple: split iff exactly two simple summands.
    LieAction lie = const_lie_action(m);
    if (nullspace(lie.e).size() != 2) throw Error(Errc::NotTwoStepModule, "semisimple module is not a sum of two simples");
    std::vector<Vec<RatFunc>> cols;
    FinModule reference;
    bool first = true;
    for (std::size_t lambda = 0; lambda < n; ++lambda) {
      FinModule simple = construct_Pdk(static_cast<int>(lambda), 0);
      for (const auto& t : hom_space(simple, m)) {
        for (std::size_t j = 0; j < t.cols(); ++j) cols.push_back(t.column(j));
        reference = first ? simple : direct_sum(reference, simple);
        first = false;
      }
    }
    KMatrix w = KMatrix::from_columns(cols, n);
    if (cols.size() != n || is_zero(determinant(w)) || !is_equivariant(w, reference, m))
      throw Error(Errc::ClassificationFailure, "could not assemble the splitting of a semisimple module");
    return ExtClassification{ExtTag::Split, std::nullopt, w};
  }
  if (!socle_is_simple(m)) throw Error(Errc::NotTwoStepModule, "socle is not simple");
  FinModule q = quotient_module(soc);
  if (!socle_is_simple(q) || socle(q).dim() != q.dim())
    throw Error(Errc::NotTwoStepModule, "quotient by the socle is not simple");
  if (split_test(soc)) throw Error(Errc::ClassificationFailure, "extension with simple socle splits");

  long k1 = static_cast<long>(soc.dim()), k2 = static_cast<long>(q.dim());
  std::vector<std::pair<ExtTag, int>> tries;
  if (k1 == k2 && k1 >= 2) tries.emplace_back(ExtTag::Ud, static_cast<int>(k1 - 1));
  if (k1 == k2 + 2 && k1 >= 3) tries.emplace_back(ExtTag::Wd, static_cast<int>(k1 - 1));
  if (k2 == k1 + 2 && k1 >= 1) tries.emplace_back(ExtTag::WdDual, static_cast<int>(k1 + 1));
  for (auto [tag, d] : tries) {
    FinModule ref = tag == ExtTag::Ud ? construct_Ud(d) : tag == ExtTag::Wd ? construct_Wd(d) : dual(construct_Wd(d));
    if (auto t = iso_test(ref, m)) return ExtClassification{tag, d, *t};
  }
  throw Error(Errc::ClassificationFailure, "no reference module matches an extension with simple parts of dimensions " +
                                               std::to_string(k1) + " and " + std::to_string(k2));
}

}  // namespace diffalg
