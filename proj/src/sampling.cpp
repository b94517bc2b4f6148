#include "diffalg/sampling.hpp"

#include "diffalg/errors.hpp"

namespace diffalg {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 of (seed, trial)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return std::mt19937_64(z ^ (z >> 31));
}

KMatrix random_invertible(std::mt19937_64& rng, std::size_t r) {
  std::uniform_int_distribution<int> coef(-2, 2);
  for (;;) {
    KMatrix q(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) q(i, j) = RatFunc(coef(rng));
    if (!is_zero(determinant(q))) return q;
  }
}

NilArray random_nilarray(std::mt19937_64& rng, int n, std::size_t r, int jmax) {
  std::uniform_int_distribution<int> coef(-2, 2);
  KMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) a(i, j) = RatFunc(coef(rng));
  std::vector<KMatrix> powers{a};
  for (std::size_t k = 1; k + 1 < r; ++k) powers.push_back(powers.back() * a);
  KMatrix q = random_invertible(rng, r);
  KMatrix qinv = *inverse(q);
  std::map<std::pair<int, int>, KMatrix> entries;
  std::uniform_int_distribution<int> keep(0, 2);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= jmax; ++j) {
      if (keep(rng) == 0) continue;
      KMatrix m(r, r);
      for (const auto& p : powers) m = m + RatFunc(coef(rng)) * p;
      entries.emplace(std::make_pair(i, j), q * m * qinv);
    }
  return NilArray(n, r, std::move(entries));
}

Term random_positive_weight_term(std::mt19937_64& rng, int max_weight, int max_degree) {
  std::uniform_int_distribution<int> deg(1, max_degree), ord(0, max_weight), side(0, 1), coef(1, 5);
  for (;;) {
    Monomial m;
    int w = 0, n = deg(rng);
    for (int k = 0; k < n; ++k) {
      int o = ord(rng);
      w += o;
      Var v = side(rng) ? xvar(static_cast<std::uint32_t>(o)) : yvar(static_cast<std::uint32_t>(o));
      m = m.times(v, 1);
    }
    if (w >= 1 && w <= max_weight) return Term{RatFunc(side(rng) ? coef(rng) : -coef(rng)), m};
  }
}

FinModule trivial_by_w2_extension() {
  DiffPoly a = cpoly(1, 1), b = cpoly(1, 2), c = cpoly(2, 1), d = cpoly(2, 2);
  DiffPoly a1 = cpoly(1, 1, 1), b1 = cpoly(1, 2, 1), c1 = cpoly(2, 1, 1), d1 = cpoly(2, 2, 1);
  std::vector<std::vector<DiffPoly>> rows = {
      {DiffPoly(1), a1 * c - a * c1, a1 * d - b * c1, b1 * d - b * d1, a1 * d1 - b1 * c1},
      {DiffPoly(), a * a, a * b, b * b, a * b1 - a1 * b},
      {DiffPoly(), DiffPoly(2) * a * c, a * d + b * c, DiffPoly(2) * b * d, DiffPoly(2) * (a * d1 - b * c1)},
      {DiffPoly(), c * c, c * d, d * d, c * d1 - c1 * d},
      {DiffPoly(), DiffPoly(), DiffPoly(), DiffPoly(), DiffPoly(1)}};
  QuotMatrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (const auto& p : r) m.back().emplace_back(Ring::A, p);
  }
  return FinModule(std::move(m));
}

namespace {

// [0 | I] or [I | 0] projection of an n-dimensional space onto k coordinates.
KMatrix projection(std::size_t k, std::size_t n, std::size_t offset) {
  KMatrix p(k, n);
  for (std::size_t i = 0; i < k; ++i) p(i, offset + i) = RatFunc(1);
  return p;
}

}  // namespace

std::vector<Surjection> surjections_onto(int e) {
  if (e < 0 || e > 3) throw Error(Errc::InvalidD, "surjections are tabulated for 0 <= e <= 3");
  FinModule target = construct_Pdk(e, 0);
  std::size_t k = target.dim();
  std::vector<Surjection> out;
  out.push_back({target, KMatrix::identity(k)});
  FinModule extra = e == 1 ? trivial_module() : construct_Pdk(1, 0);
  out.push_back({direct_sum(target, extra), projection(k, k + extra.dim(), 0)});
  FinModule prolong = prolongation(target);
  out.push_back({prolong, projection(k, 2 * k, k)});
  if (e >= 1) out.push_back({construct_Ud(e), projection(k, 2 * k, k)});
  FinModule w = construct_Wd(e + 2);
  out.push_back({w, projection(k, w.dim(), w.dim() - k)});
  if (e == 0) out.push_back({trivial_by_w2_extension(), projection(1, 5, 4)});
  return out;
}

RandomPullback random_pullback(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_e(0, 2), scale(1, 3);
  int e = pick_e(rng);
  auto maps = surjections_onto(e);
  std::uniform_int_distribution<std::size_t> pick(0, maps.size() - 1);
  auto twisted = [&]() {
    const Surjection& s = maps[pick(rng)];
    KMatrix p = random_invertible(rng, s.source.dim());
    return Surjection{change_basis(s.source, p), RatFunc(scale(rng)) * (s.pi * p)};
  };
  Surjection s1 = twisted(), s2 = twisted();
  return {pullback(s1.source, s2.source, construct_Pdk(e, 0), s1.pi, s2.pi), e};
}

}  // namespace diffalg
