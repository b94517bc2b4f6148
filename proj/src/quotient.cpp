#include "diffalg/quotient.hpp"

#include <atomic>
#include <mutex>
#include <unordered_map>

#include "diffalg/errors.hpp"
#include "diffalg/groebner.hpp"

namespace diffalg {

namespace {

struct CSyms {
  std::uint32_t c11 = intern_symbol("c11"), c12 = intern_symbol("c12"),
                c21 = intern_symbol("c21"), c22 = intern_symbol("c22");
  bool is_c(std::uint32_t s) const { return s == c11 || s == c12 || s == c21 || s == c22; }
};

const CSyms& csyms() {
  static const CSyms s;
  return s;
}

bool is_group_c(const Var& v) {
  return (v.group == Group::GroupLeft || v.group == Group::GroupRight) && csyms().is_c(v.sym);
}

Rational binom(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

DiffPoly cc(std::uint32_t sym_a, std::uint32_t ord_a, std::uint32_t sym_b, std::uint32_t ord_b,
            Group g) {
  return DiffPoly::term(RatFunc(1), Monomial::of(Var{g, sym_a, ord_a}) * Monomial::of(Var{g, sym_b, ord_b}));
}

// Replacement for the leading monomial of det^(n) (or det - 1 when n = 0 in A).
DiffPoly rewrite_rule(bool pair_kind, unsigned k, Ring r, Group g) {
  const CSyms& s = csyms();
  DiffPoly out;
  if (pair_kind) {
    unsigned n = 2 * k;
    for (unsigned a = 0; a <= n; ++a) {
      out += cc(s.c11, a, s.c22, n - a, g) * RatFunc(binom(n, a));
      if (a != k) out -= cc(s.c12, a, s.c21, n - a, g) * RatFunc(binom(n, a));
    }
    if (n == 0 && r == Ring::A) out -= DiffPoly(1);
    return out * RatFunc(1 / binom(n, k));
  }
  unsigned n = 2 * k + 1;
  for (unsigned a = 0; a <= n; ++a) {
    if (a != k + 1) out -= cc(s.c11, a, s.c22, n - a, g) * RatFunc(binom(n, a));
    out += cc(s.c12, a, s.c21, n - a, g) * RatFunc(binom(n, a));
  }
  return out * RatFunc(1 / binom(n, k + 1));
}

struct NfCache {
  std::mutex mu;
  std::unordered_map<Monomial, DiffPoly, MonomialHash> table[2];
};

NfCache& nf_cache() {
  static NfCache c;
  return c;
}

// Normal form of a monomial in the c-variables of a single group.
DiffPoly nf_monomial(const Monomial& m, Ring r) {
  if (m.is_one()) return DiffPoly(1);
  auto& cache = nf_cache();
  int slot = r == Ring::A ? 0 : 1;
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.table[slot].find(m);
    if (it != cache.table[slot].end()) return it->second;
  }
  const CSyms& s = csyms();
  Group g = m.factors()[0].var().group;
  bool found = false, pair_kind = false;
  unsigned k = 0;
  for (const auto& f : m.factors()) {
    Var v = f.var();
    if (f.exp < 0) throw Error(Errc::NotInvertible, "normal form of a Laurent monomial " + m.to_string());
    if (v.sym == s.c12 && m.exponent(Var{g, s.c21, v.order}) > 0) {
      found = pair_kind = true;
      k = v.order;
      break;
    }
    if (v.sym == s.c11 && v.order >= 1 && m.exponent(Var{g, s.c22, v.order - 1}) > 0) {
      found = true;
      k = v.order - 1;
      break;
    }
  }
  DiffPoly result;
  if (!found) {
    result = DiffPoly::term(RatFunc(1), m);
  } else {
    Monomial lm = pair_kind ? Monomial::of(Var{g, s.c12, k}) * Monomial::of(Var{g, s.c21, k})
                            : Monomial::of(Var{g, s.c11, k + 1}) * Monomial::of(Var{g, s.c22, k});
    Monomial rest = m * lm.inverse();
    PolyBuilder b;
    DiffPoly rule = rewrite_rule(pair_kind, k, r, g);
    for (const auto& t : rule.terms())
      b.add(nf_monomial(t.mono * rest, r), t.coeff);
    result = b.build();
  }
  std::lock_guard lock(cache.mu);
  cache.table[slot].emplace(m, result);
  return result;
}

std::atomic<bool> g_fallback{false};
std::atomic<long> g_disagreements{0};

}  // namespace

const char* ring_name(Ring r) { return r == Ring::A ? "A" : "B"; }

Ring parse_ring(std::string_view name) {
  if (name == "A") return Ring::A;
  if (name == "B") return Ring::B;
  throw Error(Errc::ParseError, "unknown ring '" + std::string(name) + "'");
}

void clear_nf_cache() {
  auto& c = nf_cache();
  std::lock_guard lock(c.mu);
  c.table[0].clear();
  c.table[1].clear();
}

DiffPoly graded_nf(const DiffPoly& f, Ring r) {
  PolyBuilder out;
  for (const auto& t : f.terms()) {
    std::vector<Factor> left, right, rest;
    for (const auto& fac : t.mono.factors()) {
      Var v = fac.var();
      if (!is_group_c(v)) rest.push_back(fac);
      else if (v.group == Group::GroupLeft) left.push_back(fac);
      else right.push_back(fac);
    }
    if (left.empty() && right.empty()) {
      out.add(t.mono, t.coeff);
      continue;
    }
    // Factors are already sorted, so from_factors is a cheap copy.
    DiffPoly p = nf_monomial(Monomial::from_factors(std::move(right)), r);
    if (!left.empty()) p = nf_monomial(Monomial::from_factors(std::move(left)), r) * p;
    if (!rest.empty()) p = p.times_monomial(Monomial::from_factors(std::move(rest)));
    out.add(p, t.coeff);
  }
  return out.build();
}

RittResult ritt_reduce(const DiffPoly& f, Ring r, Group g) {
  DiffPoly c11 = cpoly(1, 1, 0, g);
  DiffPoly num = cpoly(1, 2, 0, g) * cpoly(2, 1, 0, g);
  if (r == Ring::A) num += DiffPoly(1);
  DiffPoly s0 = num * DiffPoly::term(RatFunc(1), Monomial::of(cvar(1, 1, 0, g), -1));
  Images img{{BaseName{g, csyms().c22}, s0}};
  DiffPoly laurent = substitute_partial(f, img);
  int e = 0;
  Var c11v = cvar(1, 1, 0, g);
  for (const auto& t : laurent.terms()) e = std::max(e, -t.mono.exponent(c11v));
  (void)c11;
  return RittResult{laurent.times_monomial(Monomial::of(c11v, e)), e};
}

QuotElem::QuotElem(Ring r, const DiffPoly& rep) : ring_(r), rep_(rep), nf_(graded_nf(rep, r)) {}

QuotElem QuotElem::from_nf(Ring r, DiffPoly nf) {
  QuotElem q;
  q.ring_ = r;
  q.rep_ = nf;
  q.nf_ = std::move(nf);
  return q;
}

QuotElem QuotElem::derivative() const { return QuotElem(ring_, poly_derive(nf_)); }

namespace {
void check_same_ring(const QuotElem& a, const QuotElem& b) {
  if (a.ring() != b.ring()) throw Error(Errc::DimensionMismatch, "elements of different rings");
}
}  // namespace

QuotElem operator+(const QuotElem& a, const QuotElem& b) {
  check_same_ring(a, b);
  return QuotElem::from_nf(a.ring_, a.nf_ + b.nf_);
}

QuotElem operator-(const QuotElem& a, const QuotElem& b) {
  check_same_ring(a, b);
  return QuotElem::from_nf(a.ring_, a.nf_ - b.nf_);
}

QuotElem operator*(const QuotElem& a, const QuotElem& b) {
  check_same_ring(a, b);
  return QuotElem(a.ring_, a.nf_ * b.nf_);
}

QuotElem operator*(const RatFunc& c, const QuotElem& a) { return QuotElem::from_nf(a.ring_, a.nf_ * c); }

QuotElem QuotElem::operator-() const { return from_nf(ring_, -nf_); }

bool operator==(const QuotElem& a, const QuotElem& b) { return a.ring_ == b.ring_ && a.nf_ == b.nf_; }

void set_groebner_fallback(bool on) { g_fallback = on; }
bool groebner_fallback() { return g_fallback; }
long fallback_disagreements() { return g_disagreements; }

bool groebner_member(const DiffPoly& f, Ring r) {
  if (f.is_zero()) return true;
  // The ideal is isobaric (det^(k) has total order k), so generators up to
  // the largest total order of a term suffice.
  int w = 0;
  for (const auto& t : f.terms()) {
    int tw = 0;
    for (const auto& fac : t.mono.factors()) tw += static_cast<int>(fac.var().order) * fac.exp;
    w = std::max(w, tw);
  }
  w = std::max(w, max_order(f));
  std::vector<DiffPoly> gens;
  DiffPoly g = det_poly();
  gens.push_back(r == Ring::A ? g - DiffPoly(1) : g);
  for (int k = 1; k <= w; ++k) {
    g = poly_derive(g);
    gens.push_back(g);
  }
  PolyRingSpec spec = c_ring_spec(w);
  GBasis gb = buchberger(gens, spec);
  return reduce(f, gb.generators, spec).is_zero();
}

bool quot_equal(const QuotElem& f, const QuotElem& g) {
  check_same_ring(f, g);
  DiffPoly diff = f.rep() - g.rep();
  bool ritt = ritt_reduce(diff, f.ring()).nf.is_zero();
  if (!groebner_fallback()) return ritt;
  bool gb = groebner_member(diff, f.ring());
  if (gb != ritt) ++g_disagreements;
  return gb;
}

int deg_quot(const QuotElem& f) {
  if (f.is_zero()) throw Error(Errc::ZeroElement, "degree of the zero element");
  int d = 0;
  for (const auto& t : f.nf().terms()) d = std::max(d, group_degree(t.mono, Group::GroupRight));
  return d;
}

QuotElem project_homogeneous(const QuotElem& f, int d) {
  if (f.ring() != Ring::A) throw Error(Errc::DimensionMismatch, "projection expects an element of A");
  if (!f.is_zero() && deg_quot(f) > d)
    throw Error(Errc::DegreeTooLarge,
                "degree " + std::to_string(deg_quot(f)) + " exceeds " + std::to_string(d));
  std::vector<Term> top;
  for (const auto& t : f.nf().terms())
    if (group_degree(t.mono, Group::GroupRight) == d) top.push_back(t);
  return QuotElem(Ring::B, DiffPoly::from_sorted(std::move(top)));
}

Images c_images(const DiffPoly& c11, const DiffPoly& c12, const DiffPoly& c21, const DiffPoly& c22,
                Group g) {
  const CSyms& s = csyms();
  return Images{{BaseName{g, s.c11}, c11}, {BaseName{g, s.c12}, c12},
                {BaseName{g, s.c21}, c21}, {BaseName{g, s.c22}, c22}};
}

QuotElem antipode(const QuotElem& f) {
  if (f.ring() != Ring::A) throw Error(Errc::DimensionMismatch, "antipode is defined on A");
  Images img = c_images(cpoly(2, 2), -cpoly(1, 2), -cpoly(2, 1), cpoly(1, 1));
  return QuotElem(Ring::A, substitute_partial(f.nf(), img));
}

DiffPoly specialize_to_P(const QuotElem& f, const RatFunc& beta) {
  if (f.ring() != Ring::B) throw Error(Errc::DimensionMismatch, "specialization is defined on B");
  DiffPoly x = xpoly(), y = ypoly();
  return substitute_partial(f.nf(), c_images(x, y, DiffPoly(beta) * x, DiffPoly(beta) * y));
}

RatFunc evaluate_at_matrix(const DiffPoly& f, const QMatrix& g, bool require_unimodular) {
  if (g.rows() != 2 || g.cols() != 2) throw Error(Errc::DimensionMismatch, "expected a 2x2 matrix");
  if (require_unimodular && g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) != 1)
    throw Error(Errc::NotUnimodular, "evaluation point has determinant != 1");
  const CSyms& s = csyms();
  RatFunc acc(0);
  for (const auto& t : f.terms()) {
    Rational val = 1;
    bool vanishes = false;
    for (const auto& fac : t.mono.factors()) {
      Var v = fac.var();
      if (!is_group_c(v)) throw Error(Errc::MissingImage, "no value for " + v.to_string());
      if (v.order > 0) {
        if (fac.exp > 0) vanishes = true;
        else throw Error(Errc::NotInvertible, "negative power of a derivative at a constant point");
        continue;
      }
      std::size_t i = (v.sym == s.c11 || v.sym == s.c12) ? 0 : 1;
      std::size_t j = (v.sym == s.c11 || v.sym == s.c21) ? 0 : 1;
      Rational base = g(i, j);
      if (fac.exp < 0 && base == 0) throw Error(Errc::NotInvertible, "negative power of zero entry");
      Rational p = 1;
      for (int e = 0; e < std::abs(fac.exp); ++e) p *= base;
      val *= fac.exp < 0 ? Rational(1 / p) : p;
    }
    if (!vanishes) acc += t.coeff * RatFunc(val);
  }
  return acc;
}

}  // namespace diffalg
