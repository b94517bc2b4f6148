#pragma once

// Classification of torus representations into chi^d * alpha_N(lambda) form,
// equivalence of nilpotent arrays, and recognition of SL2-extensions of two
// simple modules as U_d, W_d or the dual of W_d.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffalg/actions.hpp"
#include "diffalg/repmodules.hpp"

namespace diffalg {

/// A representation of G_m^n given by a matrix of Laurent differential
/// polynomials in the torus variables.
struct GmRep {
  int n = 1;
  std::vector<std::string> vars;  ///< defaults to torus_var_names(n) when empty
  PolyMatrix matrix;
};

struct GmComponent {
  std::vector<int> d;
  NilArray N;
  KMatrix basis;  ///< columns span the isotypic component inside K^r
};

/// chi^d(x) * exp(sum N_ij d^j(x_i' / x_i)) in the given torus variables.
PolyMatrix synthesize_gm(const std::vector<int>& d, const NilArray& N, const std::vector<std::string>& vars);

/// Isotypic decomposition with the nilpotent array of each component.
/// Errc::NotUnipotentAfterTwist, Errc::LogExpressionFailure.
std::vector<GmComponent> classify_gm(const GmRep& rep);

/// Q with M_ij = Q N_ij Q^-1 for all (i, j), if one exists.
std::optional<KMatrix> nilarray_equiv(const NilArray& N, const NilArray& M, std::uint64_t seed = 0x5eed);

enum class ExtTag { Ud, Wd, WdDual, Split };
const char* ext_tag_name(ExtTag t);

struct ExtClassification {
  ExtTag tag = ExtTag::Split;
  std::optional<int> d;  ///< absent for split modules
  /// Invertible equivariant map from the reference module (U_d, W_d, dual
  /// W_d, or the direct sum of the two simple summands) onto m.
  KMatrix witness;
};

/// Errc::NotTwoStepModule unless m is an extension of two simple modules;
/// Errc::ClassificationFailure if no reference module matches.
ExtClassification classify_extension(const FinModule& m);

}  // namespace diffalg
