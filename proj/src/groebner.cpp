#include "diffalg/groebner.hpp"

#include <algorithm>
#include <map>

#include "diffalg/errors.hpp"

namespace diffalg {

namespace {

struct GrevlexDesc {
  const VarOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_compare(a, b, *order) > 0;
  }
};

using OrderedPoly = std::map<Monomial, RatFunc, GrevlexDesc>;

OrderedPoly to_ordered(const DiffPoly& f, const PolyRingSpec& spec) {
  OrderedPoly p(GrevlexDesc{&spec.order});
  for (const auto& t : f.terms()) p.emplace(t.mono, t.coeff);
  return p;
}

DiffPoly from_ordered(const OrderedPoly& p) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) terms.push_back({c, m});
  return DiffPoly::from_terms(std::move(terms));
}

bool divides(const Monomial& a, const Monomial& b) {
  for (const auto& f : a.factors())
    if (b.exponent(f.var()) < f.exp) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  std::vector<Factor> fs;
  for (const auto& f : a.factors()) fs.push_back({f.key, std::max(f.exp, b.exponent(f.var()))});
  for (const auto& f : b.factors())
    if (a.exponent(f.var()) == 0) fs.push_back(f);
  return Monomial::from_factors(std::move(fs));
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (const auto& f : a.factors())
    if (b.exponent(f.var()) != 0) return false;
  return true;
}

// p -= c * m * g, with g given in descending order.
void subtract_multiple(OrderedPoly& p, const RatFunc& c, const Monomial& m,
                       const std::vector<Term>& g) {
  for (const auto& t : g) {
    Monomial mm = t.mono * m;
    RatFunc v = c * t.coeff;
    auto it = p.find(mm);
    if (it == p.end()) {
      p.emplace(std::move(mm), -v);
    } else {
      it->second -= v;
      if (it->second.is_zero()) p.erase(it);
    }
  }
}

std::vector<Term> descending_terms(const DiffPoly& g, const PolyRingSpec& spec) {
  std::vector<Term> terms = g.terms();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return grevlex_compare(a.mono, b.mono, spec.order) > 0;
  });
  return terms;
}

}  // namespace

Term leading_term(const DiffPoly& f, const PolyRingSpec& spec) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "leading term of 0");
  const Term* best = &f.terms()[0];
  for (const auto& t : f.terms())
    if (grevlex_compare(t.mono, best->mono, spec.order) > 0) best = &t;
  return *best;
}

DiffPoly make_monic(const DiffPoly& f, const PolyRingSpec& spec) {
  if (f.is_zero()) return f;
  return f * leading_term(f, spec).coeff.inverse();
}

DiffPoly spoly(const DiffPoly& f, const DiffPoly& g, const PolyRingSpec& spec) {
  Term lf = leading_term(f, spec), lg = leading_term(g, spec);
  Monomial l = lcm(lf.mono, lg.mono);
  DiffPoly a = f.times_monomial(l * lf.mono.inverse()) * lf.coeff.inverse();
  DiffPoly b = g.times_monomial(l * lg.mono.inverse()) * lg.coeff.inverse();
  return a - b;
}

DiffPoly reduce(const DiffPoly& f, const std::vector<DiffPoly>& G, const PolyRingSpec& spec) {
  std::vector<std::vector<Term>> gs;
  for (const auto& g : G)
    if (!g.is_zero()) gs.push_back(descending_terms(g, spec));
  OrderedPoly p = to_ordered(f, spec);
  OrderedPoly rem(GrevlexDesc{&spec.order});
  while (!p.empty()) {
    auto lead = p.begin();
    Monomial m = lead->first;
    RatFunc c = lead->second;
    bool reduced = false;
    for (const auto& g : gs) {
      if (divides(g[0].mono, m)) {
        subtract_multiple(p, c / g[0].coeff, m * g[0].mono.inverse(), g);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.emplace(m, c);
      p.erase(lead);
    }
  }
  return from_ordered(rem);
}

GBasis buchberger(const std::vector<DiffPoly>& gens, const PolyRingSpec& spec,
                  BuchbergerOptions opts) {
  std::vector<DiffPoly> basis;
  for (const auto& g : gens)
    if (!g.is_zero()) basis.push_back(make_monic(g, spec));

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    Monomial lj = leading_term(basis[j], spec).mono;
    for (std::size_t i = 0; i < j; ++i) {
      Monomial li = leading_term(basis[i], spec).mono;
      if (opts.coprime_criterion && coprime(li, lj)) continue;
      pairs.push_back({i, j, lcm(li, lj)});
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) add_pairs(j);

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      auto c = grevlex_compare(a.lcm, b.lcm, spec.order);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    Pair p = *best;
    pairs.erase(best);
    DiffPoly r = reduce(spoly(basis[p.i], basis[p.j], spec), basis, spec);
    if (r.is_zero()) continue;
    basis.push_back(make_monic(r, spec));
    add_pairs(basis.size() - 1);
  }

  // Minimalize, then interreduce.
  std::vector<DiffPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Monomial li = leading_term(basis[i], spec).mono;
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      Monomial lj = leading_term(basis[j], spec).mono;
      if (divides(lj, li) && (!(lj == li) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<DiffPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<DiffPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Term lt = leading_term(minimal[i], spec);
    DiffPoly tail = minimal[i] - DiffPoly::term(lt.coeff, lt.mono);
    reduced.push_back(make_monic(DiffPoly::term(lt.coeff, lt.mono) + reduce(tail, others, spec), spec));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const DiffPoly& a, const DiffPoly& b) {
    return grevlex_compare(leading_term(a, spec).mono, leading_term(b, spec).mono, spec.order) < 0;
  });
  return GBasis{std::move(reduced), true};
}

PolyRingSpec c_ring_spec(int q, Group g, bool with_T) {
  std::vector<Var> vars;
  if (with_T) vars.push_back(Var::make(Group::Aux, "T"));
  for (int k = q; k >= 0; --k)
    for (auto [i, j] : {std::pair{2, 2}, {2, 1}, {1, 2}, {1, 1}})
      vars.push_back(cvar(i, j, static_cast<std::uint32_t>(k), g));
  return PolyRingSpec{VarOrder(std::move(vars))};
}

DiffPoly det_poly(Group g) {
  return cpoly(1, 1, 0, g) * cpoly(2, 2, 0, g) - cpoly(1, 2, 0, g) * cpoly(2, 1, 0, g);
}

DetprimeReport detprime_check(int q) {
  if (q < 1) throw Error(Errc::InvalidD, "detprime_check needs q >= 1");
  DetprimeReport rep;
  rep.q = q;
  PolyRingSpec spec = c_ring_spec(q, Group::GroupRight, true);

  std::vector<DiffPoly> dets;
  DiffPoly d = det_poly();
  for (int i = 1; i <= q; ++i) {
    d = poly_derive(d);
    dets.push_back(d);
  }
  DiffPoly T = DiffPoly::variable(Var::make(Group::Aux, "T"));
  std::vector<DiffPoly> gens = dets;
  gens.push_back(DiffPoly(1) - T * cpoly(1, 1));

  rep.leading_monomials_ok = true;
  for (int i = 1; i <= q; ++i) {
    Monomial lm = leading_term(dets[i - 1], spec).mono;
    rep.leading_monomials.push_back(lm.to_string());
    auto k = static_cast<std::uint32_t>(i / 2);
    Monomial expect = i % 2 == 1 ? Monomial::of(cvar(1, 1, k + 1)) * Monomial::of(cvar(2, 2, k))
                                 : Monomial::of(cvar(1, 2, k)) * Monomial::of(cvar(2, 1, k));
    if (!(lm == expect)) {
      rep.leading_monomials_ok = false;
      rep.failures.push_back("LM(det^(" + std::to_string(i) + ")) = " + lm.to_string() +
                             ", expected " + expect.to_string());
    }
  }

  rep.pairwise_coprime = true;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Monomial a = leading_term(gens[i], spec).mono, b = leading_term(gens[j], spec).mono;
      if (!coprime(a, b)) {
        rep.pairwise_coprime = false;
        rep.failures.push_back("leading monomials " + a.to_string() + " and " + b.to_string() +
                               " share a variable");
      }
    }

  GBasis gb = buchberger(gens, spec, BuchbergerOptions{false});
  std::vector<DiffPoly> input;
  for (const auto& g : gens) input.push_back(make_monic(g, spec));
  auto same_set = [](std::vector<DiffPoly> a, std::vector<DiffPoly> b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a)
      if (std::find(b.begin(), b.end(), x) == b.end()) return false;
    return true;
  };
  rep.basis_unchanged = same_set(gb.generators, input);
  if (!rep.basis_unchanged) {
    for (const auto& g : gb.generators)
      if (std::find(input.begin(), input.end(), g) == input.end())
        rep.failures.push_back("unexpected basis element " + g.to_string());
  }

  std::vector<DiffPoly> t_free;
  Var tv = Var::make(Group::Aux, "T");
  for (const auto& g : gb.generators) {
    bool has_t = false;
    for (const auto& term : g.terms()) has_t = has_t || term.mono.exponent(tv) != 0;
    if (!has_t) t_free.push_back(g);
  }
  std::vector<DiffPoly> monic_dets;
  for (const auto& g : dets) monic_dets.push_back(make_monic(g, spec));
  rep.elimination_ok = same_set(t_free, monic_dets);
  if (!rep.elimination_ok)
    rep.failures.push_back("T-free part has " + std::to_string(t_free.size()) +
                           " elements, expected " + std::to_string(q));
  return rep;
}

}  // namespace diffalg
