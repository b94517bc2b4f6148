#pragma once

// Seeded random inputs for the property suites. Every trial gets its own
// generator derived from (seed, trial), so trials are reproducible alone.

#include <cstdint>
#include <random>

#include "diffalg/actions.hpp"
#include "diffalg/repmodules.hpp"

namespace diffalg {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Invertible r x r matrix with small integer entries.
KMatrix random_invertible(std::mt19937_64& rng, std::size_t r);

/// Commuting nilpotent array: polynomials without constant term in one
/// strictly upper triangular matrix, conjugated by a random invertible matrix.
NilArray random_nilarray(std::mt19937_64& rng, int n, std::size_t r, int jmax);

/// Monomial in x, y and their derivatives with 1 <= weight <= max_weight and
/// degree <= max_degree, with a random nonzero integer coefficient.
Term random_positive_weight_term(std::mt19937_64& rng, int max_weight, int max_degree);

/// A module M with an equivariant surjection pi onto a fixed target.
struct Surjection {
  FinModule source;
  KMatrix pi;
};

/// Known surjections onto P_e^0 (e <= 3): the identity, direct sums, U_e,
/// W_{e+2}, the prolongation of P_e^0 and, for e = 0, the five-dimensional
/// extension of the trivial module by W_2.
std::vector<Surjection> surjections_onto(int e);

/// Five-dimensional module with the trivial module as sub and quotient and
/// W_2-type middle: its first column is (1, 0, 0, 0, 0).
FinModule trivial_by_w2_extension();

struct RandomPullback {
  FinModule module;
  int target_degree = 0;  ///< e in the common quotient P_e^0
};

/// Pull-back of two random surjections onto P_e^0, e in [0, 2], each source
/// taken in a random basis and each map scaled by a random constant.
RandomPullback random_pullback(std::mt19937_64& rng);

}  // namespace diffalg
