#include "diffalg/serialize.hpp"

#include "diffalg/config.hpp"
#include "diffalg/errors.hpp"

namespace diffalg {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

template <class T, class F>
std::vector<std::vector<T>> matrix_from_json(const json& j, const char* what, F&& conv) {
  std::vector<std::vector<T>> out;
  for (const auto& row : array(j, what)) {
    out.emplace_back();
    for (const auto& e : array(row, what)) out.back().push_back(conv(e));
  }
  return out;
}

}  // namespace

json to_json(const RatFunc& c) { return {{"num", c.num().to_string()}, {"den", c.den().to_string()}}; }

RatFunc ratfunc_from_json(const json& j) {
  if (j.is_number_integer()) return RatFunc(j.get<long>());
  if (j.is_string()) return RatFunc(UPoly::parse(j.get<std::string>()));
  const json& num = field(j, "num");
  UPoly den(1);
  if (j.contains("den")) {
    if (!j.at("den").is_string()) bad("coefficient denominator must be a string");
    den = UPoly::parse(j.at("den").get<std::string>());
  }
  if (!num.is_string()) bad("coefficient numerator must be a string");
  if (den.is_zero()) bad("zero denominator");
  return RatFunc(UPoly::parse(num.get<std::string>()), den);
}

json to_json(const DiffPoly& p) {
  json out = json::array();
  for (const auto& t : p.terms()) {
    json mono = json::array();
    for (const auto& f : t.mono.factors()) {
      Var v = f.var();
      mono.push_back({group_name(v.group), v.name(), v.order, f.exp});
    }
    out.push_back({{"coeff", to_json(t.coeff)}, {"mono", mono}});
  }
  return out;
}

DiffPoly diffpoly_from_json(const json& j) {
  PolyBuilder b;
  for (const auto& term : array(j, "polynomial")) {
    RatFunc c = ratfunc_from_json(field(term, "coeff"));
    Monomial m;
    for (const auto& f : array(field(term, "mono"), "monomial")) {
      if (!f.is_array() || f.size() != 4 || !f[0].is_string() || !f[1].is_string() ||
          !f[2].is_number_integer() || !f[3].is_number_integer())
        bad("monomial factor must be [group, name, order, mult]");
      long order = f[2].get<long>();
      if (order < 0) bad("negative derivative order");
      Var v = Var::make(parse_group(f[0].get<std::string>()), f[1].get<std::string>(),
                        static_cast<std::uint32_t>(order));
      if (v.order > static_cast<std::uint32_t>(order_cap()))
        throw Error(Errc::OrderCapExceeded, "order " + std::to_string(order) + " exceeds the cap");
      m = m.times(v, f[3].get<int>());
    }
    b.add(m, c);
  }
  return b.build();
}

json to_json(const QuotElem& q) { return {{"ring", ring_name(q.ring())}, {"rep", to_json(q.nf())}}; }

QuotElem quotelem_from_json(const json& j) {
  const json& ring = field(j, "ring");
  if (!ring.is_string()) bad("ring must be a string");
  return QuotElem(parse_ring(ring.get<std::string>()), diffpoly_from_json(field(j, "rep")));
}

json to_json(const KMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

KMatrix kmatrix_from_json(const json& j) {
  auto rows = matrix_from_json<RatFunc>(j, "matrix", ratfunc_from_json);
  if (rows.empty()) return KMatrix();
  return KMatrix::from_rows(rows);
}

json to_json(const FinModule& m) {
  json out{{"dim", m.dim()}};
  if (m.basis()) {
    json b = json::array();
    for (const auto& p : *m.basis()) b.push_back(to_json(p));
    out["basis"] = b;
  } else {
    out["basis"] = nullptr;
  }
  json rows = json::array();
  for (const auto& row : m.coaction()) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    rows.push_back(r);
  }
  out["coaction"] = rows;
  return out;
}

FinModule finmodule_from_json(const json& j) {
  auto a = matrix_from_json<QuotElem>(field(j, "coaction"), "coaction", quotelem_from_json);
  if (j.contains("dim") && (!j.at("dim").is_number_integer() || j.at("dim").get<std::size_t>() != a.size()))
    bad("dim does not match the coaction matrix");
  std::optional<std::vector<DiffPoly>> basis;
  if (j.contains("basis") && !j.at("basis").is_null()) {
    basis.emplace();
    for (const auto& p : array(j.at("basis"), "basis")) basis->push_back(diffpoly_from_json(p));
  }
  for (const auto& row : a)
    if (row.size() != a.size()) bad("coaction matrix is not square");
  return FinModule(std::move(a), std::move(basis));
}

json to_json(const GmRep& rep) {
  json m = json::array();
  for (const auto& row : rep.matrix) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    m.push_back(r);
  }
  return {{"n", rep.n}, {"vars", rep.vars.empty() ? torus_var_names(rep.n) : rep.vars}, {"matrix", m}};
}

GmRep gmrep_from_json(const json& j) {
  GmRep rep;
  const json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<int>() < 1) bad("n must be a positive integer");
  rep.n = n.get<int>();
  if (j.contains("vars")) {
    for (const auto& v : array(j.at("vars"), "vars")) {
      if (!v.is_string()) bad("variable names must be strings");
      rep.vars.push_back(v.get<std::string>());
    }
  }
  rep.matrix = matrix_from_json<DiffPoly>(field(j, "matrix"), "matrix", diffpoly_from_json);
  return rep;
}

json to_json(const NilArray& n) {
  json entries = json::array();
  for (const auto& [key, m] : n.entries())
    entries.push_back({{"i", key.first}, {"j", key.second}, {"matrix", to_json(m)}});
  return {{"n", n.n()}, {"r", n.r()}, {"entries", entries}};
}

NilArray nilarray_from_json(const json& j) {
  std::map<std::pair<int, int>, KMatrix> entries;
  for (const auto& e : array(field(j, "entries"), "entries"))
    entries.emplace(std::make_pair(field(e, "i").get<int>(), field(e, "j").get<int>()),
                    kmatrix_from_json(field(e, "matrix")));
  return NilArray(field(j, "n").get<int>(), field(j, "r").get<std::size_t>(), std::move(entries));
}

json to_json(const DetprimeReport& r) {
  return {{"q", r.q},
          {"leading_monomials_ok", r.leading_monomials_ok},
          {"pairwise_coprime", r.pairwise_coprime},
          {"basis_unchanged", r.basis_unchanged},
          {"elimination_ok", r.elimination_ok},
          {"leading_monomials", r.leading_monomials},
          {"failures", r.failures},
          {"passed", r.passed()}};
}

json to_json(const ExtClassification& c) {
  json out{{"tag", ext_tag_name(c.tag)}, {"witness", to_json(c.witness)}};
  out["d"] = c.d ? json(*c.d) : json(nullptr);
  return out;
}

json to_json(const GmComponent& c) {
  return {{"d", c.d}, {"N", to_json(c.N)}, {"basis", to_json(c.basis)}};
}

}  // namespace diffalg
