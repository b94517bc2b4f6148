#pragma once

// Finite-dimensional differential SL2-modules given by coaction matrices over
// A, with the column convention rho(e_j) = sum_i e_i (x) a_ij.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffalg/diffpoly.hpp"
#include "diffalg/linalg.hpp"
#include "diffalg/quotient.hpp"

namespace diffalg {

using QuotMatrix = std::vector<std::vector<QuotElem>>;

class FinModule {
 public:
  FinModule() = default;
  /// Validates that the coaction is square with entries in A and that the
  /// basis (when given) has matching length.
  explicit FinModule(QuotMatrix coaction, std::optional<std::vector<DiffPoly>> basis = std::nullopt);

  std::size_t dim() const { return coaction_.size(); }
  const QuotMatrix& coaction() const { return coaction_; }
  const QuotElem& entry(std::size_t i, std::size_t j) const { return coaction_[i][j]; }
  const std::optional<std::vector<DiffPoly>>& basis() const { return basis_; }

  std::string to_string() const;

 private:
  QuotMatrix coaction_;
  std::optional<std::vector<DiffPoly>> basis_;
};

/// Subspace of a module given by K-linearly independent coordinate columns.
struct SubmoduleDescr {
  FinModule ambient;
  std::vector<Vec<RatFunc>> vectors;

  std::size_t dim() const { return vectors.size(); }
  /// ambient.dim() x dim() matrix whose columns are the vectors.
  KMatrix matrix() const;
};

/// One-dimensional module with coaction 1.
FinModule trivial_module();

/// Coaction of SL2 on span(basis) inside K{x, y}.
/// Errc::LinearlyDependent, Errc::NotClosed (the message carries a witness).
FinModule coaction_matrix(const std::vector<DiffPoly>& basis);
/// Same for span(elements) inside A under the comultiplication.
FinModule coaction_matrix_in_A(const std::vector<QuotElem>& elements);

/// Monomials of degree d and weight <= k in x, y and their derivatives.
std::vector<DiffPoly> pdk_basis(int d, int k);
FinModule construct_Pdk(int d, int k);
/// P_d^0 followed by the derivatives of its basis. Errc::InvalidD if d < 1.
FinModule construct_Ud(int d);
/// P_d^0 followed by (x'y - xy') P_{d-2}^0. Errc::InvalidD if d < 2.
FinModule construct_Wd(int d);

/// [[A, dA], [0, A]] on the basis (b, b').
FinModule prolongation(const FinModule& m);
/// b_ij = S(a_ji).
FinModule dual(const FinModule& m);
FinModule direct_sum(const FinModule& a, const FinModule& b);

/// Equivariance of a K-linear map f: m -> n given as an n.dim() x m.dim() matrix.
bool is_equivariant(const KMatrix& f, const FinModule& m, const FinModule& n);

/// Pull-back of surjections pi_k: m_k -> w, in the basis (ker pi1, ker pi2,
/// lifts of a basis of w). Errc::NotEquivariant, Errc::NotSurjective.
FinModule pullback(const FinModule& m1, const FinModule& m2, const FinModule& w, const KMatrix& pi1,
                   const KMatrix& pi2);
/// Push-out of injections iota_k: u -> m_k, in the basis (image of u,
/// complement in m1, complement in m2). Errc::NotEquivariant, Errc::NotInjective.
FinModule pushout(const FinModule& m1, const FinModule& m2, const FinModule& u, const KMatrix& iota1,
                  const KMatrix& iota2);

/// P^-1 A P for an invertible K-matrix P (columns are the new basis).
FinModule change_basis(const FinModule& m, const KMatrix& p);
/// Coaction on a closed subspace (Errc::NotASubmodule otherwise).
FinModule restrict_to(const SubmoduleDescr& s);
/// Coaction on m / s, realized on a complement of s built from unit vectors.
FinModule quotient_module(const SubmoduleDescr& s);
/// Columns of s followed by unit vectors completing them to a basis.
KMatrix adapted_basis(const SubmoduleDescr& s);
/// Throws Errc::NotASubmodule unless s is closed under the coaction.
void check_submodule(const SubmoduleDescr& s);

/// Coefficient space of rho(v). Errc::ZeroVector.
SubmoduleDescr generated_submodule(const FinModule& m, const Vec<RatFunc>& v);
/// Solutions of rho(v) = v (x) 1.
SubmoduleDescr invariants(const FinModule& m);

struct LieAction {
  KMatrix e, f, h;
};
/// Differential of the constant subgroups (1 t; 0 1), (1 0; t 1), diag(u, 1/u).
LieAction const_lie_action(const FinModule& m);

/// Sum of the images of all equivariant maps P_l^0 -> m.
SubmoduleDescr socle(const FinModule& m);
bool socle_is_simple(const FinModule& m);

/// (a_11, ..., a_1n) for a module whose socle is simple and spanned by the
/// leading basis vectors. Errc::SocleNotSimple, Errc::ZeroOnSocle.
std::vector<QuotElem> first_row_embed(const FinModule& m);
/// Basis change putting a basis of the (simple) socle first.
FinModule socle_first(const FinModule& m);

/// Basis of Hom_G(m1, m2) as m2.dim() x m1.dim() matrices.
std::vector<KMatrix> hom_space(const FinModule& m1, const FinModule& m2);
/// Invertible T with T rho_1 = rho_2 T, if any.
std::optional<KMatrix> iso_test(const FinModule& m1, const FinModule& m2,
                                std::uint64_t seed = 0x5eed);
/// Equivariant section of m -> m / s, written as an m.dim() x (m.dim() - s.dim())
/// matrix whose columns map onto the complement used by quotient_module.
std::optional<KMatrix> split_test(const SubmoduleDescr& s);

/// Largest degree of a coaction entry (0 for the zero module).
int module_degree(const FinModule& m);
/// Whether every nonzero K-combination of the elements has the same degree.
bool is_homogeneous(const std::vector<QuotElem>& elements);

struct ComoduleReport {
  bool ok = true;
  std::string failure;  ///< first failing entry
};
ComoduleReport check_comodule(const FinModule& m);

}  // namespace diffalg
