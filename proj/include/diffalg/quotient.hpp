#pragma once

// The coordinate rings A = C/[det - 1] and B = C/[det] of SL2 and of the
// determinant-zero matrices, with C = K{c11, c12, c21, c22}.
//
// Two reduction routes are provided:
//  * graded normal form: det - 1 (resp. det) and all its derivatives have
//    pairwise coprime grevlex leading monomials when c-variables are ranked
//    by 4 * order + index (c11 < c12 < c21 < c22). They form a Groebner basis
//    of the differential ideal, so reduction gives a canonical representative
//    of minimal total degree. QuotElem stores this.
//  * Ritt chart: c22^(k) is eliminated through the leader of det^(k),
//    producing a Laurent polynomial in c11 (ritt_reduce).

#include <string>
#include <vector>

#include "diffalg/diffpoly.hpp"
#include "diffalg/linalg.hpp"

namespace diffalg {

enum class Ring { A, B };
const char* ring_name(Ring r);
Ring parse_ring(std::string_view name);

/// Canonical normal form of f modulo the ideal of `r`, applied independently
/// to the c-variables of GroupLeft and of GroupRight. Other variables are
/// carried along as coefficients. Requires non-negative c-exponents.
DiffPoly graded_nf(const DiffPoly& f, Ring r);
/// Drops the normal-form memo table (used by benchmarks and tests).
void clear_nf_cache();

struct RittResult {
  DiffPoly nf;  ///< c11^e * f with every c22^(k) eliminated
  int e = 0;
};
RittResult ritt_reduce(const DiffPoly& f, Ring r, Group g = Group::GroupRight);

class QuotElem {
 public:
  QuotElem() = default;
  QuotElem(Ring r, const DiffPoly& rep);
  static QuotElem constant(Ring r, const RatFunc& c) { return QuotElem(r, DiffPoly(c)); }
  /// Wraps a polynomial that is already a normal form (no reduction).
  static QuotElem from_nf(Ring r, DiffPoly nf);

  Ring ring() const { return ring_; }
  const DiffPoly& rep() const { return rep_; }
  const DiffPoly& nf() const { return nf_; }
  bool is_zero() const { return nf_.is_zero(); }

  QuotElem derivative() const;

  friend QuotElem operator+(const QuotElem& a, const QuotElem& b);
  friend QuotElem operator-(const QuotElem& a, const QuotElem& b);
  friend QuotElem operator*(const QuotElem& a, const QuotElem& b);
  friend QuotElem operator*(const RatFunc& c, const QuotElem& a);
  QuotElem operator-() const;
  QuotElem& operator+=(const QuotElem& b) { return *this = *this + b; }
  /// Equality of classes (normal forms).
  friend bool operator==(const QuotElem& a, const QuotElem& b);

  std::string to_string() const { return nf_.to_string(); }

 private:
  Ring ring_ = Ring::A;
  DiffPoly rep_;
  DiffPoly nf_;
};

/// Process-wide switch: cross-check quot_equal with a Groebner computation
/// in the truncated polynomial ring.
void set_groebner_fallback(bool on);
bool groebner_fallback();
/// Number of quot_equal calls where the Ritt chart and the Groebner check disagreed.
long fallback_disagreements();

/// Equality decided by the Ritt chart (remainder zero). With the Groebner
/// fallback enabled the result is re-checked and the Groebner answer wins.
bool quot_equal(const QuotElem& f, const QuotElem& g);
/// Membership of f in the ideal of r via Buchberger in the truncated ring.
bool groebner_member(const DiffPoly& f, Ring r);

/// Smallest total degree of a representative; Errc::ZeroElement on 0.
int deg_quot(const QuotElem& f);
/// Degree-d part of the minimal representative, read in B. Errc::DegreeTooLarge if deg f > d.
QuotElem project_homogeneous(const QuotElem& f, int d);
/// S(c11) = c22, S(c12) = -c12, S(c21) = -c21, S(c22) = c11.
QuotElem antipode(const QuotElem& f);
/// B -> K{x, y}: c11 -> x, c12 -> y, c21 -> beta x, c22 -> beta y.
DiffPoly specialize_to_P(const QuotElem& f, const RatFunc& beta);
/// Constant point evaluation c_ij -> g_ij, derivatives -> 0. With
/// require_unimodular, Errc::NotUnimodular unless det g = 1.
RatFunc evaluate_at_matrix(const DiffPoly& f, const QMatrix& g, bool require_unimodular = true);

/// Images for substituting the c-variables of group g by polynomials.
Images c_images(const DiffPoly& c11, const DiffPoly& c12, const DiffPoly& c21, const DiffPoly& c22,
                Group g = Group::GroupRight);

}  // namespace diffalg
