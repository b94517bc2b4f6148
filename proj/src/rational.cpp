#include "diffalg/rational.hpp"

#include <cctype>
#include <sstream>

#include "diffalg/errors.hpp"

namespace diffalg {

UPoly::UPoly(const Rational& c) {
  if (sgn(c) != 0) coeffs_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Rational& c, std::size_t degree) {
  if (sgn(c) == 0) return {};
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

Rational UPoly::evaluate(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

UPoly UPoly::monic() const {
  if (is_zero() || lead() == 1) return *this;
  UPoly r = *this;
  Rational inv = 1 / lead();
  for (auto& c : r.coeffs_) c *= inv;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw std::domain_error("UPoly division by zero");
  r = a;
  q = UPoly();
  if (a.degree() < b.degree()) return;
  std::vector<Rational> qc(a.coeffs_.size() - b.coeffs_.size() + 1);
  Rational inv = 1 / b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t shift = r.degree() - b.degree();
    Rational f = r.lead() * inv;
    qc[shift] = f;
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i + shift] -= f * b.coeffs_[i];
    r.trim();
  }
  q = UPoly(std::move(qc));
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string UPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (sgn(c) < 0)
      out << (first ? "-" : "-");
    else if (!first)
      out << "+";
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "t";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

namespace {

struct PolyParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  [[noreturn]] void fail(const char* why) {
    throw Error(Errc::ParseError, std::string(why) + " in t-polynomial '" + std::string(s) + "'");
  }
  std::string digits() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::string(s.substr(start, pos - start));
  }

  UPoly parse() {
    UPoly acc;
    bool first = true;
    skip();
    if (pos == s.size()) fail("empty input");
    while (true) {
      skip();
      if (pos == s.size()) break;
      int sign = 1;
      if (at('+')) {
        ++pos;
      } else if (at('-')) {
        ++pos;
        sign = -1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Rational coef = 1;
      bool have_coef = false;
      skip();
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        mpz_class n(digits());
        mpz_class d = 1;
        if (at('/')) {
          ++pos;
          d = mpz_class(digits());
          if (d == 0) fail("zero denominator");
        }
        coef = Rational(n, d);
        coef.canonicalize();
        have_coef = true;
        if (at('*')) ++pos;
      }
      std::size_t degree = 0;
      if (at('t')) {
        ++pos;
        degree = 1;
        if (at('^')) {
          ++pos;
          degree = std::stoul(digits());
        }
      } else if (!have_coef) {
        fail("expected a term");
      }
      acc += UPoly::monomial(coef * sign, degree);
    }
    return acc;
  }
};

}  // namespace

UPoly UPoly::parse(std::string_view text) { return PolyParser{text}.parse(); }

RatFunc::RatFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RatFunc with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ *= 1 / den_.lead();
      den_ = UPoly(1);
    }
    return;
  }
  UPoly g = UPoly::gcd(num_, den_);
  if (!g.is_one()) {
    UPoly q, r;
    UPoly::divmod(num_, g, q, r);
    num_ = std::move(q);
    UPoly::divmod(den_, g, q, r);
    den_ = std::move(q);
  }
  if (den_.lead() != 1) {
    Rational inv = 1 / den_.lead();
    num_ *= inv;
    den_ *= inv;
  }
}

Rational RatFunc::constant_value() const { return num_.constant_term(); }

RatFunc RatFunc::derivative() const {
  if (den_.is_one()) return RatFunc(num_.derivative());
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero in Q(t)");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ -= o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (den_.is_one() && o.den_.is_one()) {
    if (o.num_.is_constant()) {
      num_ *= o.num_.constant_term();
    } else {
      num_ = num_ * o.num_;
    }
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFunc field_derive(const RatFunc& f) { return f.derivative(); }

}  // namespace diffalg
