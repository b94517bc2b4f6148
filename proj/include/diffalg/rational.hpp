#pragma once

// Exact coefficients: the rationals and the differential field Q(t), dt = 1.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace diffalg {

using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Dense univariate polynomial in t over Q; coeffs_[i] multiplies t^i.
/// Trailing zero coefficients are never stored, so zero is the empty vector.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  UPoly(long c) : UPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly t() { return UPoly(std::vector<Rational>{0, 1}); }
  static UPoly monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& lead() const { return coeffs_.back(); }
  Rational constant_term() const { return coeffs_.empty() ? Rational(0) : coeffs_[0]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  UPoly derivative() const;
  Rational evaluate(const Rational& at) const;
  UPoly monic() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const Rational& c);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rational& c) { return a *= c; }
  UPoly operator-() const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws on division by zero.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
  /// Monic gcd (gcd(0, 0) = 0).
  static UPoly gcd(UPoly a, UPoly b);

  std::string to_string() const;
  static UPoly parse(std::string_view text);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Element of Q(t) in lowest terms with a monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(c), den_(1) {}            // NOLINT(google-explicit-constructor)
  RatFunc(const UPoly& p) : num_(p), den_(1) {}    // NOLINT(google-explicit-constructor)
  RatFunc(UPoly num, UPoly den);

  static RatFunc t() { return RatFunc(UPoly::t()); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  /// Value as a rational; requires is_constant().
  Rational constant_value() const;

  RatFunc derivative() const;
  RatFunc inverse() const;
  RatFunc pow(long e) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o) { return *this *= o.inverse(); }
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void normalize();
  UPoly num_;
  UPoly den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

/// Derivation on Q(t) with dt = 1 (quotient rule).
RatFunc field_derive(const RatFunc& f);

}  // namespace diffalg
