#include "diffalg/ordering.hpp"

#include <algorithm>

#include "diffalg/errors.hpp"

namespace diffalg {

SeqPair seq_of_term(const Term& h) {
  static const std::uint32_t xs = intern_symbol("x"), ys = intern_symbol("y");
  SeqPair s;
  for (const auto& f : h.mono.factors()) {
    Var v = f.var();
    if (v.group != Group::Module) continue;
    std::vector<int>* seq = v.sym == xs ? &s.u : v.sym == ys ? &s.v : nullptr;
    if (!seq) continue;
    if (seq->size() <= v.order) seq->resize(v.order + 1, 0);
    (*seq)[v.order] += f.exp;
  }
  for (auto* seq : {&s.u, &s.v})
    while (!seq->empty() && seq->back() == 0) seq->pop_back();
  return s;
}

std::strong_ordering compare_seq(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = n; i-- > 0;) {
    int x = i < a.size() ? a[i] : 0;
    int y = i < b.size() ? b[i] : 0;
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

TermCmp compare_pairs(const SeqPair& a, const SeqPair& b) {
  auto c = compare_seq(a.v, b.v);
  if (c == 0) c = compare_seq(a.u, b.u);
  if (c < 0) return TermCmp::Less;
  if (c > 0) return TermCmp::Greater;
  return TermCmp::Equivalent;
}

TermCmp compare_terms(const Term& h, const Term& f) {
  return compare_pairs(seq_of_term(h), seq_of_term(f));
}

VarOrder::VarOrder(std::vector<Var> descending) : vars_(std::move(descending)) {
  int n = static_cast<int>(vars_.size());
  for (int i = 0; i < n; ++i) {
    if (!rank_.emplace(vars_[i].key(), n - 1 - i).second)
      throw Error(Errc::DimensionMismatch, "duplicate variable " + vars_[i].to_string());
  }
}

int VarOrder::rank(Var v) const {
  auto it = rank_.find(v.key());
  if (it == rank_.end()) throw Error(Errc::UnknownVariable, v.to_string() + " not in variable order");
  return it->second;
}

std::strong_ordering grevlex_compare(const Monomial& m1, const Monomial& m2, const VarOrder& order) {
  int d1 = m1.total_degree(), d2 = m2.total_degree();
  // Rank every factor even when degrees already decide, so unknown variables
  // are always reported.
  auto ranked = [&](const Monomial& m) {
    std::vector<std::pair<int, int>> r;
    r.reserve(m.factors().size());
    for (const auto& f : m.factors()) r.emplace_back(order.rank(f.var()), f.exp);
    std::sort(r.begin(), r.end());
    return r;
  };
  auto a = ranked(m1), b = ranked(m2);
  if (d1 != d2) return d1 <=> d2;
  // Smallest variable with differing exponent: smaller exponent wins.
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int ra = i < a.size() ? a[i].first : INT32_MAX;
    int rb = j < b.size() ? b[j].first : INT32_MAX;
    int r = std::min(ra, rb);
    int ea = ra == r ? a[i].second : 0;
    int eb = rb == r ? b[j].second : 0;
    if (ea != eb) return eb <=> ea;
    if (ra == r) ++i;
    if (rb == r) ++j;
  }
  return std::strong_ordering::equal;
}

}  // namespace diffalg
