#include "diffalg/suites.hpp"

#include <chrono>
#include <map>
#include <sstream>

#include "diffalg/classify.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/groebner.hpp"
#include "diffalg/ordering.hpp"
#include "diffalg/sampling.hpp"

namespace diffalg {

bool SuiteReport::passed() const {
  for (const auto& a : assertions)
    if (!a.passed) return false;
  return true;
}

namespace {

struct Outcome {
  bool ok;
  std::string detail;
  Outcome(bool ok, std::string detail = {}) : ok(ok), detail(std::move(detail)) {}  // NOLINT
};

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}

  /// Runs body; an Error escaping it counts as a failure carrying its message.
  template <class F>
  void check(const std::string& anchor, F&& body) {
    try {
      Outcome o = body();
      r_.assertions.push_back({anchor, o.ok, o.detail});
    } catch (const Error& e) {
      r_.assertions.push_back({anchor, false, e.what()});
    }
  }

  void discrepancy(const std::string& anchor, const std::string& stated, const std::string& computed) {
    r_.discrepancies.push_back({anchor, stated, computed});
  }

 private:
  SuiteReport& r_;
};

QuotElem qa(const DiffPoly& p) { return QuotElem(Ring::A, p); }
DiffPoly c(int i, int j, unsigned k = 0) { return cpoly(i, j, k); }

std::string show(const Term& t) { return DiffPoly::term(t.coeff, t.mono).to_string(); }

std::vector<Vec<RatFunc>> leading_units(std::size_t n, std::size_t k) {
  std::vector<Vec<RatFunc>> out;
  for (std::size_t i = 0; i < k; ++i) {
    Vec<RatFunc> v(n, RatFunc(0));
    v[i] = RatFunc(1);
    out.push_back(v);
  }
  return out;
}

std::vector<Vec<RatFunc>> all_units(std::size_t n) { return leading_units(n, n); }

Outcome iso_with_witness(const FinModule& a, const FinModule& b) {
  auto t = iso_test(a, b);
  if (!t) return {false, "no isomorphism found"};
  return {is_equivariant(*t, a, b) && inverse(*t).has_value(), "witness " + to_string(*t)};
}

Outcome not_iso(const FinModule& a, const FinModule& b) {
  auto t = iso_test(a, b);
  if (t) return {false, "unexpected isomorphism " + to_string(*t)};
  return true;
}

Outcome comodule_ok(const FinModule& m) {
  auto r = check_comodule(m);
  return {r.ok, r.failure};
}

// Module basis inside K{x, y} spanned by the regular-representation example.
std::vector<QuotElem> w2_first_row_expected() {
  return {qa(c(1, 1) * c(1, 1)), qa(c(1, 1) * c(1, 2)), qa(c(1, 2) * c(1, 2)),
          qa(c(1, 1, 1) * c(1, 2) - c(1, 1) * c(1, 2, 1))};
}

std::vector<QuotElem> non_homogeneous_module() {
  DiffPoly x11 = c(1, 1), x12 = c(1, 2), x21 = c(2, 1), x22 = c(2, 2);
  return {qa(DiffPoly(1)), qa(c(1, 1, 1) * x21 - x11 * c(2, 1, 1)), qa(c(1, 2, 1) * x22 - x12 * c(2, 2, 1)),
          qa(c(1, 1, 1) * x22 - c(2, 1, 1) * x12)};
}

void worked_examples(Recorder& rec) {
  FinModule w = construct_Wd(2);
  rec.check("regular-example/first-row", [&]() -> Outcome {
    auto expected = w2_first_row_expected();
    for (std::size_t j = 0; j < 4; ++j)
      if (!(w.entry(0, j) == expected[j])) return {false, "entry " + std::to_string(j) + " is " + w.entry(0, j).to_string()};
    return true;
  });
  rec.check("regular-example/xy-coefficient", [&]() -> Outcome {
    QuotElem expected = qa(DiffPoly(2) * (c(1, 1, 1) * c(2, 2) - c(1, 2, 1) * c(2, 1)));
    return {quot_equal(w.entry(1, 3), expected), w.entry(1, 3).to_string()};
  });
  rec.check("regular-example/y-squared-coefficients", [&]() -> Outcome {
    // Coefficients of y^2 in the coaction of x^2 and xy, by direct substitution.
    DiffPoly x2 = sl2_coaction(xpoly() * xpoly()), xy = sl2_coaction(xpoly() * ypoly());
    Monomial y2 = Monomial::of(yvar(), 2);
    auto y2_coeff = [&](const DiffPoly& f) {
      PolyBuilder acc;
      for (const auto& t : f.terms())
        if (t.mono.exponent(yvar()) == 2 && t.mono.exponent(xvar()) == 0)
          acc.add(t.mono * y2.inverse(), t.coeff);
      return acc.build();
    };
    DiffPoly a = y2_coeff(x2), b = y2_coeff(xy);
    rec.discrepancy("regular-example/y-squared-coefficient-of-x-squared", (c(2, 2) * c(2, 2)).to_string(),
                    a.to_string());
    rec.discrepancy("regular-example/y-squared-coefficient-of-xy", (c(1, 1) * c(2, 1)).to_string(), b.to_string());
    return {a == c(2, 1) * c(2, 1) && b == c(2, 1) * c(2, 2) && w.entry(2, 0) == qa(a) && w.entry(2, 1) == qa(b),
            a.to_string() + ", " + b.to_string()};
  });
  rec.check("regular-example/socle", [&]() -> Outcome {
    return same_span(socle(w).vectors, leading_units(4, 3), 4);
  });
  rec.check("regular-example/generated-submodules", [&]() -> Outcome {
    Vec<RatFunc> x2(4, RatFunc(0)), wr(4, RatFunc(0));
    x2[0] = RatFunc(1);
    wr[3] = RatFunc(1);
    return generated_submodule(w, x2).dim() == 3 && generated_submodule(w, wr).dim() == 4;
  });
  rec.check("extension-dimensions/examples", [&]() -> Outcome {
    return construct_Ud(1).dim() == 4 && w.dim() == 4 && construct_Ud(3).dim() == 8;
  });
  rec.check("prolongation/isomorphic-to-U1", [&] { return iso_with_witness(prolongation(construct_Pdk(1, 0)), construct_Ud(1)); });
  rec.check("prolongation/isomorphic-to-U2", [&] { return iso_with_witness(prolongation(construct_Pdk(2, 0)), construct_Ud(2)); });
  rec.check("self-duality/P1", [&] { return iso_with_witness(dual(construct_Pdk(1, 0)), construct_Pdk(1, 0)); });
  rec.check("first-row-embedding/W2-homogeneous-degree-2", [&]() -> Outcome {
    auto row = first_row_embed(w);
    return is_homogeneous(row) && deg_quot(row[0]) == 2;
  });
  rec.check("homogeneity/non-homogeneous-submodule", [&]() -> Outcome {
    auto v = non_homogeneous_module();
    return check_comodule(coaction_matrix_in_A(v)).ok && !is_homogeneous(v);
  });
  rec.check("classification/W2-and-U1", [&]() -> Outcome {
    auto a = classify_extension(w);
    auto b = classify_extension(construct_Ud(1));
    return a.tag == ExtTag::Wd && a.d == 2 && b.tag == ExtTag::Ud && b.d == 1;
  });
  rec.check("torus/scalar-times-unipotent", [&]() -> Outcome {
    GmRep rep{1, {}, {{xpoly(), xpoly(1)}, {DiffPoly(), xpoly()}}};
    auto comps = classify_gm(rep);
    return comps.size() == 1 && comps[0].d == std::vector<int>{1} && comps[0].N.entries().count({1, 0}) == 1;
  });
  rec.check("determinant-chain/leading-monomials-q2", [&]() -> Outcome {
    auto r = detprime_check(2);
    return {r.passed(), r.failures.empty() ? "" : r.failures.front()};
  });
}

void lemma_max(Recorder& rec, SuiteReport& report) {
  int drop_failures = 0, max_failures = 0;
  std::optional<std::pair<Term, std::string>> smallest;
  auto smaller = [](const Term& a, const Term& b) {
    long wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    return a.mono.total_degree() < b.mono.total_degree();
  };
  for (int trial = 0; trial < report.trials; ++trial) {
    auto rng = trial_rng(report.seed, static_cast<std::uint64_t>(trial));
    Term h = random_positive_weight_term(rng, 5, 4);
    std::string failure;
    try {
      MaxWitness mw = lemma_max_witness(h, RatFunc::t());
      DiffPoly residual = gm_evaluate(DiffPoly::term(h.coeff, h.mono), RatFunc::t()) -
                          DiffPoly::term(h.coeff, h.mono) * RatFunc::t().pow(static_cast<int>(dvalue(h)));
      if (weight(residual) != weight(h) - 1) {
        ++drop_failures;
        failure = "weight drop fails";
      } else if (auto f = maximality_counterexample(h, mw.htilde)) {
        ++max_failures;
        failure = "f = " + f->to_string() + " lies strictly between htilde = " + show(mw.htilde) + " and h";
      }
    } catch (const Error& e) {
      ++drop_failures;
      failure = e.what();
    }
    if (!failure.empty() && (!smallest || smaller(h, smallest->first)))
      smallest = std::make_pair(h, "trial " + std::to_string(trial) + ": h = " + show(h) + ", " + failure);
  }
  std::string n = std::to_string(report.trials);
  rec.check("weight-lowering/weight-drops-by-one",
            [&] { return Outcome(drop_failures == 0, std::to_string(drop_failures) + " of " + n + " trials fail"); });
  rec.check("weight-lowering/maximality-of-htilde",
            [&] { return Outcome(max_failures == 0, std::to_string(max_failures) + " of " + n + " trials fail"); });
  if (smallest) report.counterexample = smallest->second;
}

void lemma_free(Recorder& rec, SuiteReport& report) {
  int failures = 0;
  std::uniform_int_distribution<int> nterms(1, 4);
  for (int trial = 0; trial < report.trials; ++trial) {
    auto rng = trial_rng(report.seed, static_cast<std::uint64_t>(trial));
    DiffPoly f;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
      Term h = random_positive_weight_term(rng, 4, 3);
      f += DiffPoly::term(h.coeff, h.mono);
    }
    if (f.is_zero()) continue;
    long w = weight(f);
    // The isotypic part containing the largest term of top weight.
    const Term* top = nullptr;
    for (const auto& t : f.terms())
      if (weight(t) == w && (!top || compare_terms(t, *top) == TermCmp::Greater)) top = &t;
    long d = dvalue(*top);
    PolyBuilder part;
    for (const auto& t : f.terms())
      if (dvalue(t) == d) part.add(t.mono, t.coeff);
    DiffPoly fd = part.build();
    DiffPoly residual = gm_evaluate(fd, RatFunc::t()) - fd * RatFunc::t().pow(static_cast<int>(d));
    if (weight(residual) != w - 1) {
      ++failures;
      if (!report.counterexample)
        report.counterexample = "trial " + std::to_string(trial) + ": f_d = " + fd.to_string();
    }
  }
  rec.check("weight-lowering-free/isotypic-part-drops-by-one", [&] {
    return Outcome(failures == 0, std::to_string(failures) + " of " + std::to_string(report.trials) + " trials fail");
  });
  // A cancelling combination whose Gm-span has no weight-one element.
  DiffPoly f = xpoly() * xpoly(2) - xpoly(1) * xpoly(1);
  DiffPoly residual = gm_evaluate(f, RatFunc::t()) - f * RatFunc::t().pow(2);
  rec.discrepancy("weight-lowering-free/cancellation",
                  "weight of rho(f)(t) - t^2 f is 1 for f = " + f.to_string(),
                  "rho(f)(t) - t^2 f = " + residual.to_string() + " has weight " + std::to_string(weight(residual)));
}

void comodule_suite(Recorder& rec, SuiteReport& report) {
  for (int d = 0; d <= 4; ++d) {
    std::string s = std::to_string(d);
    rec.check("constructions/P" + s + "^0", [&] { return comodule_ok(construct_Pdk(d, 0)); });
    rec.check("constructions/P" + s + "^1", [&] { return comodule_ok(construct_Pdk(d, 1)); });
    rec.check("constructions/prolongation-P" + s + "^0", [&] { return comodule_ok(prolongation(construct_Pdk(d, 0))); });
    if (d >= 1) {
      rec.check("constructions/U" + s, [&] { return comodule_ok(construct_Ud(d)); });
      rec.check("constructions/dual-U" + s, [&] { return comodule_ok(dual(construct_Ud(d))); });
    }
    if (d >= 2) {
      rec.check("constructions/W" + s, [&] { return comodule_ok(construct_Wd(d)); });
      rec.check("constructions/dual-W" + s, [&] { return comodule_ok(dual(construct_Wd(d))); });
    }
  }
  for (int d = 1; d <= 3; ++d) {
    // Push-out of the socle inclusions P_d^0 -> U_d and P_d^0 -> W_d (or U_d again).
    FinModule p = construct_Pdk(d, 0);
    std::size_t k = p.dim();
    FinModule other = d >= 2 ? construct_Wd(d) : construct_Ud(d);
    KMatrix i1(2 * k, k), i2(other.dim(), k);
    for (std::size_t i = 0; i < k; ++i) i1(i, i) = i2(i, i) = RatFunc(1);
    rec.check("constructions/push-out-over-P" + std::to_string(d) + "^0",
              [&] { return comodule_ok(pushout(construct_Ud(d), other, p, i1, i2)); });
  }
  int comod_fail = 0, degree_fail = 0;
  for (int trial = 0; trial < report.trials; ++trial) {
    auto rng = trial_rng(report.seed, static_cast<std::uint64_t>(trial));
    RandomPullback pb = random_pullback(rng);
    const FinModule& m = pb.module;
    if (!check_comodule(m).ok) {
      ++comod_fail;
      continue;
    }
    // Submodule generated by a random vector; the degree of the whole is the
    // larger of the degrees of sub and quotient.
    std::uniform_int_distribution<int> coef(-2, 2);
    Vec<RatFunc> v(m.dim(), RatFunc(0));
    while (std::all_of(v.begin(), v.end(), [](const RatFunc& x) { return is_zero(x); }))
      for (auto& x : v) x = RatFunc(coef(rng));
    SubmoduleDescr s = generated_submodule(m, v);
    int ds = module_degree(restrict_to(s));
    int dq = s.dim() == m.dim() ? 0 : module_degree(quotient_module(s));
    if (module_degree(m) != std::max(ds, dq)) {
      ++degree_fail;
      if (!report.counterexample) report.counterexample = "trial " + std::to_string(trial) + ": " + m.to_string();
    }
  }
  std::string n = std::to_string(report.trials);
  rec.check("random-pull-backs/comodule-axioms",
            [&] { return Outcome(comod_fail == 0, std::to_string(comod_fail) + " of " + n + " trials fail"); });
  rec.check("random-pull-backs/degree-is-max-of-sub-and-quotient",
            [&] { return Outcome(degree_fail == 0, std::to_string(degree_fail) + " of " + n + " trials fail"); });
}

void socle_suite(Recorder& rec) {
  for (int d = 1; d <= 4; ++d) {
    std::string s = std::to_string(d);
    auto socle_is_leading = [&](const FinModule& m) -> Outcome {
      auto soc = socle(m);
      return {same_span(soc.vectors, leading_units(m.dim(), static_cast<std::size_t>(d + 1)), m.dim()),
              "socle dimension " + std::to_string(soc.dim())};
    };
    rec.check("first-order-modules/socle-U" + s, [&] { return socle_is_leading(construct_Ud(d)); });
    if (d >= 2) rec.check("first-order-modules/socle-W" + s, [&] { return socle_is_leading(construct_Wd(d)); });
  }
  std::vector<std::pair<std::string, FinModule>> sums = {
      {"P1+P1", direct_sum(construct_Pdk(1, 0), construct_Pdk(1, 0))},
      {"P1+trivial", direct_sum(construct_Pdk(1, 0), trivial_module())},
      {"P2+P1+trivial", direct_sum(direct_sum(construct_Pdk(2, 0), construct_Pdk(1, 0)), trivial_module())}};
  for (const auto& [name, m] : sums)
    rec.check("semisimple/socle-" + name, [&] { return same_span(socle(m).vectors, all_units(m.dim()), m.dim()); });
  std::vector<std::pair<std::string, FinModule>> extensions = {
      {"U2", construct_Ud(2)}, {"W3", construct_Wd(3)}, {"dual-W2", dual(construct_Wd(2))}};
  for (const auto& [name, m] : extensions) {
    rec.check("semisimple/socle-of-socle-" + name, [&]() -> Outcome {
      FinModule s = restrict_to(socle(m));
      return {socle(s).dim() == s.dim(), "socle dimension " + std::to_string(s.dim())};
    });
  }
  rec.check("trivial-by-W2/socle-is-trivial", [&]() -> Outcome {
    FinModule m = trivial_by_w2_extension();
    return same_span(socle(m).vectors, leading_units(5, 1), 5);
  });
}

void iso_table(Recorder& rec) {
  struct Named {
    std::string name;
    FinModule m;
    int d;
    char family;
  };
  std::vector<Named> all;
  for (int d = 1; d <= 3; ++d) {
    std::string s = std::to_string(d);
    FinModule u = construct_Ud(d);
    rec.check("iso-table/U" + s + "-self-dual", [&] { return iso_with_witness(u, dual(u)); });
    rec.check("iso-table/U" + s + "-is-prolongation", [&] { return iso_with_witness(u, prolongation(construct_Pdk(d, 0))); });
    all.push_back({"U" + s, u, d, 'U'});
    if (d >= 2) {
      FinModule w = construct_Wd(d);
      all.push_back({"W" + s, w, d, 'W'});
      all.push_back({"W" + s + "_dual", dual(w), d, 'V'});
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      rec.check("iso-table/" + all[i].name + "-vs-" + all[j].name, [&] { return not_iso(all[i].m, all[j].m); });
}

void counterexample_suite(Recorder& rec) {
  FinModule m = trivial_by_w2_extension();
  rec.check("trivial-by-W2/comodule-axioms", [&] { return comodule_ok(m); });
  rec.check("trivial-by-W2/invariants-are-first-vector", [&]() -> Outcome {
    auto inv = invariants(m);
    return {same_span(inv.vectors, leading_units(5, 1), 5), "dimension " + std::to_string(inv.dim())};
  });
  rec.check("trivial-by-W2/trivial-sub-does-not-split",
            [&] { return Outcome(!split_test(SubmoduleDescr{m, leading_units(5, 1)}).has_value()); });
  rec.check("trivial-by-W2/quotient-is-W2", [&] {
    return iso_with_witness(quotient_module(SubmoduleDescr{m, leading_units(5, 1)}), construct_Wd(2));
  });
  rec.check("trivial-by-W2/four-dimensional-sub-is-dual-W2", [&] {
    return iso_with_witness(restrict_to(SubmoduleDescr{m, leading_units(5, 4)}), dual(construct_Wd(2)));
  });
  rec.check("trivial-by-W2/W2-over-P2-does-not-split", [&] {
    return Outcome(!split_test(SubmoduleDescr{construct_Wd(2), leading_units(4, 3)}).has_value());
  });
  rec.check("trivial-by-W2/dual-W2-has-trivial-socle", [&]() -> Outcome {
    FinModule dw = dual(construct_Wd(2));
    auto s = socle(dw);
    return {s.dim() == 1 && invariants(dw).dim() == 1, "socle dimension " + std::to_string(s.dim())};
  });
}

int default_trials(const std::string& name) {
  if (name == "lemma-max") return 200;
  if (name == "lemma-free") return 50;
  if (name == "comodule") return 20;
  return 0;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"paper-examples", "lemma-max", "lemma-free", "comodule",
                                                 "socle",          "iso-table", "counterexample"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(Errc::ParseError, "unknown suite '" + name + "'");
  SuiteReport report;
  report.suite = name;
  report.seed = options.seed;
  report.trials = options.trials.value_or(default_trials(name));
  Recorder rec(report);
  auto start = std::chrono::steady_clock::now();
  if (name == "paper-examples") worked_examples(rec);
  else if (name == "lemma-max") lemma_max(rec, report);
  else if (name == "lemma-free") lemma_free(rec, report);
  else if (name == "comodule") comodule_suite(rec, report);
  else if (name == "socle") socle_suite(rec);
  else if (name == "iso-table") iso_table(rec);
  else counterexample_suite(rec);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json assertions = nlohmann::json::array(), discrepancies = nlohmann::json::array();
  for (const auto& a : report.assertions)
    assertions.push_back({{"anchor", a.anchor}, {"passed", a.passed}, {"detail", a.detail}});
  for (const auto& d : report.discrepancies)
    discrepancies.push_back({{"anchor", d.anchor}, {"stated", d.stated}, {"computed", d.computed}});
  nlohmann::json out{{"suite", report.suite},
                     {"trials", report.trials},
                     {"seed", report.seed},
                     {"passed", report.passed()},
                     {"seconds", report.seconds},
                     {"assertions", assertions},
                     {"discrepancies", discrepancies}};
  out["counterexample"] = report.counterexample ? nlohmann::json(*report.counterexample) : nlohmann::json(nullptr);
  return out;
}

std::string to_text(const SuiteReport& report) {
  std::ostringstream os;
  for (const auto& a : report.assertions) {
    os << (a.passed ? "PASS " : "FAIL ") << a.anchor;
    if (!a.detail.empty()) os << "  (" << a.detail << ")";
    os << '\n';
  }
  for (const auto& d : report.discrepancies)
    os << "DISCREPANCY " << d.anchor << ": stated " << d.stated << ", computed " << d.computed << '\n';
  if (report.counterexample) os << "counterexample: " << *report.counterexample << '\n';
  os << report.suite << ": " << (report.passed() ? "pass" : "FAIL") << " in " << report.seconds << " s\n";
  return os.str();
}

}  // namespace diffalg
