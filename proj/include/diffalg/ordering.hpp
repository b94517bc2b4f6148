#pragma once

// Term orders: the S x S order on terms of K{x, y} and grevlex for the
// Groebner engine.

#include <compare>
#include <unordered_map>
#include <vector>

#include "diffalg/diffpoly.hpp"

namespace diffalg {

/// u[i] = multiplicity of x^(i), v[i] = multiplicity of y^(i); no trailing zeros.
struct SeqPair {
  std::vector<int> u;
  std::vector<int> v;
  friend bool operator==(const SeqPair&, const SeqPair&) = default;
};

enum class TermCmp { Less, Greater, Equivalent };

SeqPair seq_of_term(const Term& h);

/// Order on S: compare at the largest index where the (zero-padded) sequences differ.
std::strong_ordering compare_seq(const std::vector<int>& a, const std::vector<int>& b);
/// Order on S x S: second components first.
TermCmp compare_pairs(const SeqPair& a, const SeqPair& b);
TermCmp compare_terms(const Term& h, const Term& f);

/// Variables listed from largest to smallest.
class VarOrder {
 public:
  VarOrder() = default;
  explicit VarOrder(std::vector<Var> descending);

  const std::vector<Var>& vars() const { return vars_; }
  bool contains(Var v) const { return rank_.count(v.key()) != 0; }
  /// 0 for the smallest variable; Errc::UnknownVariable if absent.
  int rank(Var v) const;

 private:
  std::vector<Var> vars_;
  std::unordered_map<std::uint64_t, int> rank_;
};

/// Graded reverse lexicographic comparison. Errc::UnknownVariable if a
/// variable of m1 or m2 is not in the order.
std::strong_ordering grevlex_compare(const Monomial& m1, const Monomial& m2, const VarOrder& order);

}  // namespace diffalg
