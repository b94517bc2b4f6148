#pragma once

// Buchberger's algorithm over Q(t) in finitely many commuting variables, and
// the Groebner-basis check for the derivatives of the determinant.

#include <string>
#include <vector>

#include "diffalg/diffpoly.hpp"
#include "diffalg/ordering.hpp"

namespace diffalg {

/// Variables (largest first) with grevlex order. Derivative variables are
/// treated as independent commuting indeterminates.
struct PolyRingSpec {
  VarOrder order;
};

struct GBasis {
  std::vector<DiffPoly> generators;
  bool reduced = false;
};

struct BuchbergerOptions {
  /// Skip pairs whose leading monomials are coprime (Buchberger's first criterion).
  bool coprime_criterion = true;
};

Term leading_term(const DiffPoly& f, const PolyRingSpec& spec);
DiffPoly spoly(const DiffPoly& f, const DiffPoly& g, const PolyRingSpec& spec);
/// Full division remainder of f by G.
DiffPoly reduce(const DiffPoly& f, const std::vector<DiffPoly>& G, const PolyRingSpec& spec);
/// Reduced, monic Groebner basis sorted by increasing leading monomial. Pairs
/// are processed smallest lcm first, ties broken by generator index.
GBasis buchberger(const std::vector<DiffPoly>& gens, const PolyRingSpec& spec,
                  BuchbergerOptions opts = {});
DiffPoly make_monic(const DiffPoly& f, const PolyRingSpec& spec);

/// c_ij^(k) for k <= q in group g, ordered c22^(q) > c21^(q) > c12^(q) > c11^(q) > ... > c11,
/// optionally preceded by the extra variable T.
PolyRingSpec c_ring_spec(int q, Group g = Group::GroupRight, bool with_T = false);

/// det = c11 c22 - c12 c21 in group g.
DiffPoly det_poly(Group g = Group::GroupRight);

struct DetprimeReport {
  int q = 0;
  bool leading_monomials_ok = false;  // (a)
  bool pairwise_coprime = false;      // (b)
  bool basis_unchanged = false;       // (c)
  bool elimination_ok = false;        // (d)
  std::vector<std::string> leading_monomials;  // of det', ..., det^(q)
  std::vector<std::string> failures;           // counterexample certificates
  bool passed() const {
    return leading_monomials_ok && pairwise_coprime && basis_unchanged && elimination_ok;
  }
};

/// Builds det', ..., det^(q) and 1 - T c11 and checks (a) the leading monomials
/// c11^(k+1) c22^(k) (odd order 2k+1) and c12^(k) c21^(k) (even order 2k), (b)
/// pairwise coprimality, (c) that Buchberger without the coprime criterion
/// returns the input set, (d) that the T-free part is exactly {det', ..., det^(q)}.
DetprimeReport detprime_check(int q);

}  // namespace diffalg
