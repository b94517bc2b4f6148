#pragma once

// Sparse differential polynomials over Q(t) in tagged groups of differential
// indeterminates.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diffalg/rational.hpp"

namespace diffalg {

/// Which tensor factor a variable belongs to. Aux constants have derivative 0.
enum class Group : std::uint8_t { Module = 0, GroupLeft = 1, GroupRight = 2, Aux = 3 };

const char* group_name(Group g);
Group parse_group(std::string_view name);

std::uint32_t intern_symbol(std::string_view name);
const std::string& symbol_name(std::uint32_t id);

/// A derivative of a named indeterminate: name^(order) in a variable group.
struct Var {
  Group group = Group::Module;
  std::uint32_t sym = 0;
  std::uint32_t order = 0;

  static Var make(Group g, std::string_view name, std::uint32_t order = 0) {
    return Var{g, intern_symbol(name), order};
  }

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(group) << 56) | (static_cast<std::uint64_t>(sym) << 24) |
           order;
  }
  static Var from_key(std::uint64_t k) {
    return Var{static_cast<Group>(k >> 56), static_cast<std::uint32_t>((k >> 24) & 0xffffffffu),
               static_cast<std::uint32_t>(k & 0xffffffu)};
  }

  const std::string& name() const { return symbol_name(sym); }
  Var derived(std::uint32_t by = 1) const { return Var{group, sym, order + by}; }
  Var base() const { return Var{group, sym, 0}; }

  friend bool operator==(const Var& a, const Var& b) { return a.key() == b.key(); }
  friend auto operator<=>(const Var& a, const Var& b) { return a.key() <=> b.key(); }

  std::string to_string() const;
};

struct Factor {
  std::uint64_t key;
  std::int32_t exp;

  Var var() const { return Var::from_key(key); }
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Product of powers of variables; factors sorted by variable key, no zero
/// exponents. Negative exponents denote formal inverses.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(Var v, int exp = 1);
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int exponent(Var v) const;
  int total_degree() const;

  /// this * v^delta
  Monomial times(Var v, int delta) const;
  Monomial inverse() const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
  friend bool operator<(const Monomial& a, const Monomial& b);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<Factor> f_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  RatFunc coeff;
  Monomial mono;
};

/// Canonical sparse polynomial: terms strictly sorted by monomial, no zero
/// coefficients. Structural equality is mathematical equality.
class DiffPoly {
 public:
  DiffPoly() = default;
  DiffPoly(const RatFunc& c);  // NOLINT(google-explicit-constructor)
  DiffPoly(long c) : DiffPoly(RatFunc(c)) {}  // NOLINT(google-explicit-constructor)

  static DiffPoly variable(Var v) { return term(RatFunc(1), Monomial::of(v)); }
  static DiffPoly term(const RatFunc& c, Monomial m);
  static DiffPoly from_terms(std::vector<Term> terms);
  /// Adopts terms already strictly sorted by monomial with nonzero coefficients.
  static DiffPoly from_sorted(std::vector<Term> terms) {
    DiffPoly p;
    p.terms_ = std::move(terms);
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  RatFunc constant_value() const;
  /// Coefficient of a given monomial (zero when absent).
  RatFunc coeff(const Monomial& m) const;

  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const DiffPoly& a, const RatFunc& c);
  friend DiffPoly operator*(const RatFunc& c, const DiffPoly& a) { return a * c; }
  DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
  DiffPoly operator-() const;
  DiffPoly pow(unsigned e) const;
  DiffPoly times_monomial(const Monomial& m) const;

  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Accumulates terms in any order and emits a canonical DiffPoly.
class PolyBuilder {
 public:
  void add(const Monomial& m, const RatFunc& c);
  void add(const DiffPoly& p, const RatFunc& scale = RatFunc(1));
  DiffPoly build();

 private:
  std::map<Monomial, RatFunc> acc_;
};

// ---- derivation and substitution ----

DiffPoly poly_derive(const DiffPoly& f);
DiffPoly poly_derive(const DiffPoly& f, unsigned times);

struct BaseName {
  Group group;
  std::uint32_t sym;
  friend auto operator<=>(const BaseName&, const BaseName&) = default;
};

inline BaseName base_name(Group g, std::string_view name) { return {g, intern_symbol(name)}; }

using Images = std::map<BaseName, DiffPoly>;

/// Differential homomorphism v^(p) -> d^p(image(v)). Every variable of f must
/// have an image (Errc::MissingImage otherwise).
DiffPoly substitute(const DiffPoly& f, const Images& images);
/// Same, but variables without an image are left in place.
DiffPoly substitute_partial(const DiffPoly& f, const Images& images);

/// Moves every variable of group `from` into group `to`.
DiffPoly rename_group(const DiffPoly& f, Group from, Group to);

// ---- weights on K{x, y} ----

/// Sum of order * multiplicity over module variables.
long weight(const Term& h);
/// Maximum term weight; Errc::ZeroPolynomial on 0.
long weight(const DiffPoly& f);
/// x-multiplicity minus y-multiplicity.
long dvalue(const Term& h);
std::vector<Term> term_set(const DiffPoly& f);

int max_order(const DiffPoly& f);
int total_degree(const DiffPoly& f);
/// Sum of exponents of the variables in group `g`.
int group_degree(const Monomial& m, Group g);

// Handy constructors for the fixed variable names used throughout.
inline Var xvar(std::uint32_t order = 0) { return Var::make(Group::Module, "x", order); }
inline Var yvar(std::uint32_t order = 0) { return Var::make(Group::Module, "y", order); }
/// c_ij^(order) in the given group, i, j in {1, 2}.
Var cvar(int i, int j, std::uint32_t order = 0, Group g = Group::GroupRight);
DiffPoly cpoly(int i, int j, std::uint32_t order = 0, Group g = Group::GroupRight);
DiffPoly xpoly(std::uint32_t order = 0);
DiffPoly ypoly(std::uint32_t order = 0);
DiffPoly aux(std::string_view name);

}  // namespace diffalg
