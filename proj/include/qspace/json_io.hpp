#pragma once

#include <string>

#include "json.hpp"

#include "qspace/algebra.hpp"
#include "qspace/calculus.hpp"
#include "qspace/qpoint.hpp"
#include "qspace/strata.hpp"
#include "qspace/tangent.hpp"

namespace qspace {

// Keys keep insertion order so reports are byte-stable for a fixed seed.
using Json = nlohmann::ordered_json;

Json to_json(const QPoint& p);            // {"n":..., "points":[[...],...]}
QPoint qpoint_from_json(const Json& j);

Json to_json(const Matching& m);
Json to_json(const DistanceResult& d);

Json to_json(const Signature& s);         // {"J":..., "k":[...]}

Json to_json(const TangentVector& v);     // {"base":..., "blocks":[...]}
TangentVector tangent_from_json(const Json& j);

Json to_json(const BranchedCurve& c);     // {"a","b","samples","branches"}
BranchedCurve curve_from_json(const Json& j);

Json to_json(const SampledCurve& c);      // {"a","b","samples":[QPoint,...]}
SampledCurve sampled_curve_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json(const Json& j, const std::string& out_path);  // stdout if empty

}  // namespace qspace
