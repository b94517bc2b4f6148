#include <random>

#include "diffalg/config.hpp"
#include "diffalg/diffpoly.hpp"
#include "diffalg/errors.hpp"
#include "doctest.h"

using namespace diffalg;

namespace {

RatFunc tt() { return RatFunc::t(); }

DiffPoly random_poly(std::mt19937_64& rng, int terms, int max_order, int max_deg) {
  std::uniform_int_distribution<int> coef(-5, 5), ord(0, max_order), deg(0, max_deg), pick(0, 1);
  DiffPoly f;
  for (int i = 0; i < terms; ++i) {
    DiffPoly term(RatFunc(UPoly(std::vector<Rational>{coef(rng), coef(rng)})));
    int d = deg(rng);
    for (int k = 0; k < d; ++k) term *= pick(rng) ? xpoly(ord(rng)) : ypoly(ord(rng));
    f += term;
  }
  return f;
}

}  // namespace

TEST_CASE("field derivative on Q(t)") {
  CHECK(field_derive(tt() * tt()) == RatFunc(2) * tt());
  CHECK(field_derive(tt().inverse()) == -(tt() * tt()).inverse());
  CHECK(field_derive(RatFunc(Rational(7, 3))).is_zero());
}

TEST_CASE("t-polynomial parse round trip") {
  UPoly p = UPoly::parse("3/2*t^2-t+1");
  CHECK(p.coeff(2) == Rational(3, 2));
  CHECK(p.coeff(1) == -1);
  CHECK(UPoly::parse(p.to_string()) == p);
  CHECK_THROWS_AS(UPoly::parse("3*s"), Error);
}

TEST_CASE("ring arithmetic") {
  DiffPoly x = xpoly(), y = ypoly();
  CHECK((x + y) + (x - y) == DiffPoly(2) * x);
  DiffPoly xx1 = x * xpoly(1);
  CHECK(xx1.size() == 1);
  CHECK(xx1.terms()[0].mono.factors().size() == 2);
  CHECK((x + y) * (x - y) == x * x - y * y);
}

TEST_CASE("derivation") {
  DiffPoly x = xpoly(), y = ypoly();
  CHECK(poly_derive(x * x) == DiffPoly(2) * x * xpoly(1));
  CHECK(poly_derive(DiffPoly(tt()) * x) == x + DiffPoly(tt()) * xpoly(1));
  CHECK(poly_derive(xpoly(1) * y - x * ypoly(1)) == xpoly(2) * y - x * ypoly(2));
  CHECK(poly_derive(aux("beta") * x) == aux("beta") * xpoly(1));
}

TEST_CASE("order cap") {
  int saved = order_cap();
  set_order_cap(4);
  CHECK_THROWS_AS(poly_derive(xpoly(4)), Error);
  CHECK_THROWS_AS(set_order_cap(3), Error);
  CHECK(order_cap() == 4);
  set_order_cap(saved);
}

TEST_CASE("substitution") {
  DiffPoly x = xpoly(), y = ypoly();
  Images tx{{base_name(Group::Module, "x"), DiffPoly(tt()) * x}};
  CHECK(substitute(xpoly(1), tx) == x + DiffPoly(tt()) * xpoly(1));
  Images id{{base_name(Group::Module, "x"), x}};
  CHECK(substitute(x, id) == x);
  CHECK_THROWS_AS(substitute(x * y, id), Error);
  DiffPoly beta = aux("beta");
  Images phi{{base_name(Group::Module, "x"), x}, {base_name(Group::Module, "y"), beta * x}};
  CHECK(substitute(x * y, phi) == beta * x * x);
}

TEST_CASE("weight and d-value") {
  DiffPoly h = xpoly(2) * ypoly() * ypoly(1).pow(2);
  CHECK(weight(h) == 4);
  CHECK(dvalue(h.terms()[0]) == -2);
  CHECK(weight(xpoly().pow(3)) == 0);
  CHECK(weight(xpoly(1) * ypoly() - xpoly() * ypoly(1)) == 1);
  CHECK(dvalue((xpoly(1) * ypoly()).terms()[0]) == 0);
  CHECK_THROWS_AS(weight(DiffPoly()), Error);
  CHECK(term_set(DiffPoly()).empty());
  CHECK(term_set(xpoly() * xpoly() + DiffPoly(2) * xpoly() * ypoly()).size() == 2);
}

TEST_CASE("properties on random polynomials") {
  std::mt19937_64 rng(11);
  Images img{{base_name(Group::Module, "x"), DiffPoly(tt()) * xpoly() + ypoly(1)},
             {base_name(Group::Module, "y"), xpoly() * ypoly() + DiffPoly(3)}};
  for (int trial = 0; trial < 40; ++trial) {
    DiffPoly f = random_poly(rng, 4, 2, 3), g = random_poly(rng, 3, 2, 2);
    CHECK(poly_derive(f * g) == poly_derive(f) * g + f * poly_derive(g));
    CHECK(substitute(poly_derive(f), img) == poly_derive(substitute(f, img)));
    CHECK(DiffPoly::from_terms(f.terms()) == f);
    if (!f.is_zero() && !g.is_zero()) {
      Term a = f.terms()[0], b = g.terms()[0];
      DiffPoly ab = DiffPoly::term(a.coeff, a.mono) * DiffPoly::term(b.coeff, b.mono);
      CHECK(weight(ab) == weight(a) + weight(b));
      CHECK(dvalue(ab.terms()[0]) == dvalue(a) + dvalue(b));
    }
  }
}

TEST_CASE("Laurent exponents") {
  DiffPoly x = xpoly();
  Monomial inv = Monomial::of(xvar(), -1);
  DiffPoly xi = DiffPoly::term(RatFunc(1), inv);
  CHECK(x * xi == DiffPoly(1));
  CHECK(poly_derive(xi) == -DiffPoly::term(RatFunc(1), Monomial::of(xvar(), -2) * Monomial::of(xvar(1))));
}
