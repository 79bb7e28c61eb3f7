#pragma once

#include <json.hpp>

#include "symq/boolfn.hpp"
#include "symq/group.hpp"
#include "symq/oracles.hpp"
#include "symq/shuffle.hpp"

namespace symq {

using Json = nlohmann::ordered_json;

// Group format: {"degree": n, "generators": [[images...], ...]} with
// 1-indexed images; named shorthand {"kind":"symmetric","n":5} also accepted
// on input (kinds: symmetric, cyclic, alternating, trivial).
Json group_to_json(const GroupAction& g);
GroupAction group_from_json(const Json& j);

// Function format: {"n":..., "m":..., "entries": [["string", 0|1], ...]}
// with digit-character strings (symbol value = digit value).
Json fn_to_json(const PartialFn& f);
PartialFn fn_from_json(const Json& j, size_t table_cap = kDefaultTableCap);

Json dist_to_json(const FiniteDistribution& d);
FiniteDistribution dist_from_json(const Json& j, int m);

// {"degree": d, "epsilon": "p/q", "primal": [["monomial","coeff"],...],
//  "dual": [["input","weight"],...], "mode": "exact|float"}
Json certificate_to_json(const LPCertificate& cert);

Json shuffle_map_to_json(const ShuffleMap& m);  // 1-indexed images

}  // namespace symq
