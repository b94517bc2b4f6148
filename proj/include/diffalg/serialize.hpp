#pragma once

// JSON encodings of the algebraic objects.
//   RatFunc   {"num": "<t-poly>", "den": "<t-poly>"}
//   DiffPoly  [{"coeff": RatFunc, "mono": [[group, name, order, mult], ...]}, ...]
//   QuotElem  {"ring": "A" | "B", "rep": DiffPoly}
//   FinModule {"dim": n, "basis": [DiffPoly...] | null, "coaction": [[QuotElem...]...]}
//   GmRep     {"n": n, "vars": [names] (optional), "matrix": [[DiffPoly...]...]}
//   NilArray  {"n": n, "r": r, "entries": [{"i": i, "j": j, "matrix": [[RatFunc...]...]}...]}
// Malformed input raises Errc::ParseError.

#include <json.hpp>

#include "diffalg/classify.hpp"
#include "diffalg/groebner.hpp"
#include "diffalg/repmodules.hpp"

namespace diffalg {

using json = nlohmann::json;

json to_json(const RatFunc& c);
RatFunc ratfunc_from_json(const json& j);

json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const json& j);

json to_json(const QuotElem& q);
QuotElem quotelem_from_json(const json& j);

json to_json(const KMatrix& m);
KMatrix kmatrix_from_json(const json& j);

json to_json(const FinModule& m);
FinModule finmodule_from_json(const json& j);

json to_json(const GmRep& rep);
GmRep gmrep_from_json(const json& j);

json to_json(const NilArray& n);
NilArray nilarray_from_json(const json& j);

json to_json(const DetprimeReport& r);
json to_json(const ExtClassification& c);
json to_json(const GmComponent& c);

}  // namespace diffalg
