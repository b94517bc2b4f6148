#pragma once

// Differential coactions of SL2 and Gm on K{x, y}, comultiplication on C,
// torus evaluation, the weight-lowering witness, logarithmic derivatives and
// the unipotent representations alpha_N of G_a^n.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffalg/diffpoly.hpp"
#include "diffalg/linalg.hpp"

namespace diffalg {

using PolyMatrix = std::vector<std::vector<DiffPoly>>;

PolyMatrix poly_identity(std::size_t n);
PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix(const KMatrix& m);

/// x -> x c11 + y c21, y -> x c12 + y c22 with the c's in group g.
DiffPoly sl2_coaction(const DiffPoly& f, Group g = Group::GroupRight);
/// c_ij -> sum_k c_ik (GroupLeft) c_kj (GroupRight) on the GroupRight c-variables of f.
DiffPoly comultiply_C(const DiffPoly& f);
/// x -> x z, y -> y / z with z in group g.
DiffPoly gm_coaction(const DiffPoly& f, Group g = Group::GroupRight);
/// x -> a x, y -> y / a. Errc::ZeroScalar if a = 0.
DiffPoly gm_evaluate(const DiffPoly& f, const RatFunc& a);

struct MaxWitness {
  DiffPoly residual;  ///< gm_evaluate(h, a) - a^d(h) h
  Term htilde;
};

/// Builds the weight-lowering term for h: with p the smallest positive order
/// of an x-factor, htilde = alpha m p a^(d-1) a' (x^(p))^(m-1) x^(p-1) h_p;
/// without such a factor the same with y, where the coefficient picks up the
/// sign of (1/a)' = -a'/a^2. Checks that the residual has weight wt(h) - 1,
/// contains htilde, that htilde < h and that every other residual term is
/// smaller than htilde (Errc::PostconditionFailed otherwise).
/// Errc::ZeroWeight if wt(h) = 0, Errc::NonConstantRequired if a' = 0.
MaxWitness lemma_max_witness(const Term& h, const RatFunc& a);

/// Searches monomials f with d(f) = d(h), orders <= max order of h and degree
/// <= deg(h) + extra_degree for one with f < h but f > htilde.
std::optional<Monomial> maximality_counterexample(const Term& h, const Term& htilde,
                                                  int extra_degree = 2);

/// Module variable names x1, ..., xn (just "x" when n = 1).
std::vector<std::string> torus_var_names(int n);
/// (x_i' * x_i^-1)_i for the given variable names.
std::vector<DiffPoly> log_derivative(const std::vector<std::string>& vars);
std::vector<DiffPoly> log_derivative(int n);

/// Mutually commuting nilpotent r x r matrices N_{i,j} (i = 1..n, j >= 0).
class NilArray {
 public:
  NilArray(int n, std::size_t r, std::map<std::pair<int, int>, KMatrix> entries);

  int n() const { return n_; }
  std::size_t r() const { return r_; }
  const std::map<std::pair<int, int>, KMatrix>& entries() const { return entries_; }
  int max_j() const;

 private:
  int n_;
  std::size_t r_;
  std::map<std::pair<int, int>, KMatrix> entries_;
};

/// exp(sum_{i,j} N_{i,j} d^j x_i) as a polynomial matrix in the given variables.
PolyMatrix ga_rep(const NilArray& N, const std::vector<std::string>& vars);
PolyMatrix ga_rep(const NilArray& N);

}  // namespace diffalg
