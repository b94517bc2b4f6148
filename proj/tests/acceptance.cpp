// Acceptance run: one PASS/FAIL line per criterion with its runtime. A
// criterion also fails when it exceeds its time budget.
//
// Exit status is 0 iff the failing criteria are exactly those passed with
// --known-failure (none by default).

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "diffalg/classify.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/groebner.hpp"
#include "diffalg/ordering.hpp"
#include "diffalg/sampling.hpp"

using namespace diffalg;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Result {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

QuotElem qa(const DiffPoly& p) { return QuotElem(Ring::A, p); }
DiffPoly c(int i, int j, unsigned k = 0) { return cpoly(i, j, k); }
DiffPoly x(unsigned k = 0) { return xpoly(k); }
DiffPoly y(unsigned k = 0) { return ypoly(k); }

std::vector<Vec<RatFunc>> leading_units(std::size_t n, std::size_t k) {
  std::vector<Vec<RatFunc>> out;
  for (std::size_t i = 0; i < k; ++i) {
    Vec<RatFunc> v(n, RatFunc(0));
    v[i] = RatFunc(1);
    out.push_back(v);
  }
  return out;
}

// Coefficient of the module monomial mu in a polynomial over module and group variables.
DiffPoly module_coefficient(const DiffPoly& f, const Monomial& mu) {
  PolyBuilder acc;
  for (const auto& t : f.terms()) {
    std::vector<Factor> mod, rest;
    for (const auto& fac : t.mono.factors()) (fac.var().group == Group::Module ? mod : rest).push_back(fac);
    if (Monomial::from_factors(mod) == mu) acc.add(Monomial::from_factors(rest), t.coeff);
  }
  return acc.build();
}

// Coordinates of a polynomial in a basis of distinct monomials.
Vec<RatFunc> coordinates(const DiffPoly& f, const std::vector<DiffPoly>& monomial_basis) {
  Vec<RatFunc> v;
  for (const auto& b : monomial_basis) v.push_back(f.coeff(b.terms().at(0).mono));
  return v;
}

bool witness_ok(const std::optional<KMatrix>& t, const FinModule& a, const FinModule& b) {
  return t && inverse(*t).has_value() && is_equivariant(*t, a, b);
}

Result regular_example() {
  Result r;
  FinModule w = construct_Wd(2);
  std::vector<QuotElem> expected = {qa(c(1, 1) * c(1, 1)), qa(c(1, 1) * c(1, 2)), qa(c(1, 2) * c(1, 2)),
                                    qa(c(1, 1, 1) * c(1, 2) - c(1, 1) * c(1, 2, 1))};
  for (std::size_t j = 0; j < 4; ++j) r.require(w.entry(0, j) == expected[j], "first row entry " + std::to_string(j));
  QuotElem xy = qa(DiffPoly(2) * (c(1, 1, 1) * c(2, 2) - c(1, 2, 1) * c(2, 1)));
  r.require(quot_equal(w.entry(1, 3), xy), "xy coefficient equals 2(c11' c22 - c12' c21) in A");

  // The y^2 coefficients by expanding (x c11 + y c21)^2 and (x c11 + y c21)(x c12 + y c22).
  DiffPoly lx = x() * c(1, 1) + y() * c(2, 1), ly = x() * c(1, 2) + y() * c(2, 2);
  Monomial y2 = Monomial::of(yvar(), 2);
  DiffPoly from_x2 = module_coefficient(lx * lx, y2), from_xy = module_coefficient(lx * ly, y2);
  r.require(w.entry(2, 0) == qa(from_x2) && w.entry(2, 1) == qa(from_xy), "y^2 row matches direct expansion");
  if (!(qa(from_x2) == qa(c(2, 2) * c(2, 2))))
    r.note("discrepancy: y^2 coefficient of x^2 displayed as c22^2, computed " + from_x2.to_string());
  if (!(qa(from_xy) == qa(c(1, 1) * c(2, 1))))
    r.note("discrepancy: y^2 coefficient of xy displayed as c11*c21, computed " + from_xy.to_string());
  return r;
}

Result dimensions() {
  Result r;
  for (int d = 1; d <= 8; ++d) {
    std::string s = std::to_string(d);
    FinModule u = construct_Ud(d);
    r.require(u.dim() == static_cast<std::size_t>(2 * d + 2), "dim U" + s);
    r.require(check_comodule(u).ok, "comodule U" + s);
    if (d >= 2) {
      FinModule w = construct_Wd(d);
      r.require(w.dim() == static_cast<std::size_t>(2 * d), "dim W" + s);
      r.require(check_comodule(w).ok, "comodule W" + s);
    }
    // Brute-force count of x^a y^b x'^c y'^e with a+b+c+e = d and c+e <= 1.
    std::size_t count = 0;
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b)
        for (int cc = 0; cc <= 1; ++cc)
          for (int e = 0; cc + e <= 1; ++e) count += (a + b + cc + e == d);
    FinModule p = construct_Pdk(d, 1);
    r.require(p.dim() == count && count == static_cast<std::size_t>(3 * d + 1), "dim P" + s + "^1");
    r.require(check_comodule(p).ok, "comodule P" + s + "^1");
  }
  try {
    construct_Wd(1);
    r.require(false, "W1 is rejected as degenerate");
  } catch (const Error& e) {
    r.require(e.code() == Errc::InvalidD, "W1 raises InvalidD");
    r.note("W1 rejected as degenerate (InvalidD); W_d checked for 2 <= d <= 8");
  }
  return r;
}

// Submodules V with P_d^0 < V <= P_d^1 and V / P_d^0 simple correspond to the
// simple submodules of Q = P_d^1 / P_d^0. Every simple submodule of Q contains a
// highest-weight vector; when each highest-weight space of Q is a line, the
// simple submodules are exactly those generated by these lines that come out
// with dimension lambda + 1.
Result exhaustiveness() {
  Result r;
  for (int d = 1; d <= 4; ++d) {
    std::string s = std::to_string(d);
    std::vector<DiffPoly> mono = pdk_basis(d, 1);
    FinModule p = construct_Pdk(d, 1);
    std::size_t n = p.dim(), k = static_cast<std::size_t>(d + 1);
    std::vector<Vec<RatFunc>> p0;
    for (const auto& b : pdk_basis(d, 0)) p0.push_back(coordinates(b, mono));
    SubmoduleDescr base{p, p0};
    KMatrix adapted = adapted_basis(base);
    FinModule q = quotient_module(base);
    LieAction lie = const_lie_action(q);
    std::vector<std::vector<Vec<RatFunc>>> found;
    for (long lambda = 0; lambda <= 2 * d; ++lambda) {
      KMatrix stacked(2 * q.dim(), q.dim());
      stacked.set_block(0, 0, lie.e);
      stacked.set_block(q.dim(), 0, lie.h - RatFunc(lambda) * KMatrix::identity(q.dim()));
      auto hw = nullspace(stacked);
      if (hw.empty()) continue;
      r.require(hw.size() == 1, "highest-weight space of weight " + std::to_string(lambda) + " is a line (d=" + s + ")");
      SubmoduleDescr g = generated_submodule(q, hw[0]);
      if (g.dim() != static_cast<std::size_t>(lambda + 1)) continue;
      // Preimage in P_d^1: P_d^0 plus the lifts of g.
      std::vector<Vec<RatFunc>> pre = p0;
      for (const auto& v : g.vectors) {
        Vec<RatFunc> full(n, RatFunc(0));
        for (std::size_t i = 0; i < v.size(); ++i) full[k + i] = v[i];
        Vec<RatFunc> lifted(n, RatFunc(0));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) lifted[i] += adapted(i, j) * full[j];
        pre.push_back(lifted);
      }
      found.push_back(pre);
    }
    std::vector<std::vector<Vec<RatFunc>>> expected;
    auto span_of = [&](const FinModule& m) {
      std::vector<Vec<RatFunc>> out;
      for (const auto& b : *m.basis()) out.push_back(coordinates(b, mono));
      return out;
    };
    expected.push_back(span_of(construct_Ud(d)));
    if (d >= 2) expected.push_back(span_of(construct_Wd(d)));
    r.require(found.size() == expected.size(), "number of simple quotients over P" + s + "^0");
    for (const auto& e : expected) {
      bool hit = false;
      for (const auto& f : found) hit = hit || same_span(e, f, n);
      r.require(hit, "U/W for d=" + s + " among the found submodules");
    }
  }
  return r;
}

Result iso_table() {
  Result r;
  struct Named {
    std::string name;
    FinModule m;
  };
  std::vector<Named> all;
  for (int d = 1; d <= 3; ++d) {
    std::string s = std::to_string(d);
    FinModule u = construct_Ud(d);
    FinModule du = dual(u), fp = prolongation(construct_Pdk(d, 0));
    r.require(witness_ok(iso_test(u, du), u, du), "U" + s + " is self-dual");
    r.require(witness_ok(iso_test(u, fp), u, fp), "U" + s + " is the prolongation of P" + s + "^0");
    all.push_back({"U" + s, u});
    if (d >= 2) {
      FinModule w = construct_Wd(d);
      all.push_back({"W" + s, w});
      all.push_back({"W" + s + "_dual", dual(w)});
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      r.require(!iso_test(all[i].m, all[j].m).has_value(), all[i].name + " not isomorphic to " + all[j].name);
  return r;
}

Result weight_lowering() {
  Result r;
  int drop = 0, clause = 0;
  std::string first;
  Images scale{{base_name(Group::Module, "x"), DiffPoly(RatFunc::t()) * x()},
               {base_name(Group::Module, "y"), DiffPoly(RatFunc::t().pow(-1)) * y()}};
  for (int trial = 0; trial < 200; ++trial) {
    auto rng = trial_rng(kSeed, static_cast<std::uint64_t>(trial));
    Term h = random_positive_weight_term(rng, 5, 4);
    DiffPoly hp = DiffPoly::term(h.coeff, h.mono);
    // Residual by direct substitution x -> t x, y -> y / t.
    DiffPoly residual = substitute(hp, scale) - hp * RatFunc::t().pow(dvalue(h));
    if (weight(residual) != weight(h) - 1) ++drop;
    try {
      MaxWitness mw = lemma_max_witness(h, RatFunc::t());
      if (!(mw.residual == residual)) ++drop;
      if (auto f = maximality_counterexample(h, mw.htilde)) {
        ++clause;
        if (first.empty())
          first = "trial " + std::to_string(trial) + ": h = " + hp.to_string() + ", f = " + f->to_string();
      }
    } catch (const Error& e) {
      ++drop;
    }
  }
  r.require(drop == 0, std::to_string(drop) + " of 200 trials break the weight drop");
  r.require(clause == 0, std::to_string(clause) + " of 200 trials break the maximality clause");
  if (!first.empty()) r.note("first maximality counterexample " + first);
  return r;
}

Result determinant_chain() {
  Result r;
  for (int q = 1; q <= 4; ++q) {
    DetprimeReport rep = detprime_check(q);
    std::string s = std::to_string(q);
    r.require(rep.passed(), "detprime_check(" + s + ") parts (a)-(d)");
    for (int i = 1; i <= q; ++i) {
      auto k = static_cast<std::uint32_t>(i / 2);
      Monomial lm = i % 2 ? Monomial::of(cvar(1, 1, k + 1)) * Monomial::of(cvar(2, 2, k))
                          : Monomial::of(cvar(1, 2, k)) * Monomial::of(cvar(2, 1, k));
      r.require(rep.leading_monomials.size() >= static_cast<std::size_t>(i) &&
                    rep.leading_monomials[i - 1] == lm.to_string(),
                "leading monomial of det^(" + std::to_string(i) + ") at q=" + s);
    }
  }
  return r;
}

Result torus_round_trip() {
  Result r;
  for (int trial = 0; trial < 50; ++trial) {
    auto rng = trial_rng(kSeed, static_cast<std::uint64_t>(trial));
    std::uniform_int_distribution<int> pick_n(1, 2), pick_r(1, 4), pick_j(0, 2), deg(-3, 3);
    int n = pick_n(rng);
    std::size_t rank = static_cast<std::size_t>(pick_r(rng));
    std::vector<int> d(static_cast<std::size_t>(n));
    for (auto& e : d) e = deg(rng);
    NilArray N = random_nilarray(rng, n, rank, pick_j(rng));
    auto vars = torus_var_names(n);
    PolyMatrix m = synthesize_gm(d, N, vars);
    KMatrix q = random_invertible(rng, rank);
    PolyMatrix conj = poly_mul(poly_matrix(q), poly_mul(m, poly_matrix(*inverse(q))));
    std::string s = "trial " + std::to_string(trial);
    try {
      auto comps = classify_gm(GmRep{n, vars, conj});
      r.require(comps.size() == 1 && comps[0].d == d, s + ": d recovered");
      r.require(comps.size() == 1 && nilarray_equiv(comps[0].N, N).has_value(), s + ": N recovered up to conjugacy");
    } catch (const Error& e) {
      r.require(false, s + ": " + e.what());
    }
    // Homomorphism law: exp(N(u + v)) = exp(N u) exp(N v) in disjoint symbols.
    std::vector<std::string> us, vs;
    Images sum;
    for (int i = 1; i <= n; ++i) {
      us.push_back("u" + std::to_string(i));
      vs.push_back("v" + std::to_string(i));
      sum[base_name(Group::Module, vars[static_cast<std::size_t>(i - 1)])] =
          DiffPoly::variable(Var::make(Group::Module, us.back())) + DiffPoly::variable(Var::make(Group::Module, vs.back()));
    }
    PolyMatrix gx = ga_rep(N, vars), prod = poly_mul(ga_rep(N, us), ga_rep(N, vs));
    bool law = true;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) law = law && substitute_partial(gx[i][j], sum) == prod[i][j];
    r.require(law, s + ": homomorphism law");
  }
  return r;
}

Result trivial_by_w2() {
  Result r;
  FinModule m = trivial_by_w2_extension();
  r.require(check_comodule(m).ok, "comodule axioms");
  auto inv = invariants(m);
  r.require(inv.dim() == 1 && same_span(inv.vectors, leading_units(5, 1), 5), "invariants are the first basis vector");
  r.require(!split_test(SubmoduleDescr{m, leading_units(5, 1)}).has_value(), "trivial sub has no complement");
  r.require(!split_test(SubmoduleDescr{construct_Wd(2), leading_units(4, 3)}).has_value(),
            "P2^0 inside W2 has no complement");
  return r;
}

Result socles() {
  Result r;
  for (int d = 1; d <= 4; ++d) {
    std::string s = std::to_string(d);
    std::vector<std::pair<std::string, FinModule>> ms = {{"U" + s, construct_Ud(d)}};
    if (d >= 2) ms.push_back({"W" + s, construct_Wd(d)});
    for (const auto& [name, m] : ms) {
      auto soc = socle(m);
      r.require(same_span(soc.vectors, leading_units(m.dim(), static_cast<std::size_t>(d + 1)), m.dim()),
                "socle of " + name + " is P" + s + "^0");
    }
  }
  std::vector<FinModule> sums = {direct_sum(construct_Pdk(1, 0), construct_Pdk(1, 0)),
                                 direct_sum(construct_Pdk(2, 0), trivial_module()),
                                 direct_sum(direct_sum(construct_Pdk(3, 0), construct_Pdk(1, 0)), construct_Pdk(2, 0))};
  for (const auto& m : sums) r.require(socle(m).dim() == m.dim(), "semisimple sum of dimension " + std::to_string(m.dim()));
  return r;
}

Result degrees() {
  Result r;
  std::vector<QuotElem> v = {qa(DiffPoly(1)), qa(c(1, 1, 1) * c(2, 1) - c(1, 1) * c(2, 1, 1)),
                             qa(c(1, 2, 1) * c(2, 2) - c(1, 2) * c(2, 2, 1)), qa(c(1, 1, 1) * c(2, 2) - c(2, 1, 1) * c(1, 2))};
  FinModule vm = coaction_matrix_in_A(v);
  r.require(check_comodule(vm).ok, "the four elements span a submodule of A");
  r.require(!is_homogeneous(v), "flagged non-homogeneous");
  auto embedded = first_row_embed(socle_first(dual(vm)));
  r.require(is_homogeneous(embedded), "embedded dual is homogeneous");
  bool deg2 = true;
  for (const auto& e : embedded) deg2 = deg2 && !e.is_zero() && deg_quot(e) == 2;
  r.require(deg2, "embedded dual has degree 2");
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto rng = trial_rng(kSeed, static_cast<std::uint64_t>(trial));
    FinModule m = random_pullback(rng).module;
    std::uniform_int_distribution<int> coef(-2, 2);
    Vec<RatFunc> vec(m.dim(), RatFunc(0));
    while (std::all_of(vec.begin(), vec.end(), [](const RatFunc& a) { return is_zero(a); }))
      for (auto& a : vec) a = RatFunc(coef(rng));
    SubmoduleDescr s = generated_submodule(m, vec);
    int ds = module_degree(restrict_to(s));
    int dq = s.dim() == m.dim() ? 0 : module_degree(quotient_module(s));
    if (module_degree(m) != std::max(ds, dq)) ++bad;
  }
  r.require(bad == 0, std::to_string(bad) + " of 50 pull-backs break deg M = max(deg S, deg M/S)");
  return r;
}

struct Criterion {
  int id;
  std::string name;
  double budget;
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  app.add_option("--known-failure", known, "Criterion expected to fail (repeatable)");
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> criteria = {
      {1, "regular-representation example", 1, regular_example},
      {2, "dimensions of U_d, W_d, P_d^1 and comodule axioms", 10, dimensions},
      {3, "exhaustiveness of U_d and W_d inside P_d^1", 60, exhaustiveness},
      {4, "isomorphism table", 120, iso_table},
      {5, "weight-lowering witness and maximality", 30, weight_lowering},
      {6, "Groebner argument for the determinant chain", 30, determinant_chain},
      {7, "torus classification round trip", 60, torus_round_trip},
      {8, "trivial-by-W2 extension", 10, trivial_by_w2},
      {9, "socles", 30, socles},
      {10, "degree and homogeneity", 60, degrees},
  };
  std::set<int> failed;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.note(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget) r.require(false, "runtime over budget");
    if (!r.ok) failed.insert(c.id);
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (r.ok ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << "  [" << secs << " s, budget " << c.budget
         << " s]";
    std::cout << line.str() << "\n";
    for (const auto& n : r.notes) std::cout << "      " << n << "\n";
  }
  std::set<int> expected(known.begin(), known.end());
  std::cout << (criteria.size() - failed.size()) << "/" << criteria.size() << " criteria pass";
  if (!expected.empty()) {
    std::cout << "; expected failures:";
    for (int k : expected) std::cout << " " << k;
  }
  std::cout << "\n";
  return failed == expected ? 0 : 1;
}
