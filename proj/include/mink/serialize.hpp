#ifndef MINK_SERIALIZE_HPP
#define MINK_SERIALIZE_HPP

#include "mink/analysis.hpp"
#include "mink/coapprox.hpp"
#include "mink/flat.hpp"
#include "mink/gauge.hpp"
#include "mink/witness.hpp"

#include <json.hpp>

#include <string>

namespace mink {

using Json = nlohmann::json;

// Gauge spec object: {"dim": int, "kind": "vertices"|"halfspaces"|"builtin",
// "data": [[...]] | {"tag": ..., "params": {...}}}. Unknown fields are
// rejected.
Json gauge_to_json(const Gauge& g);
Gauge gauge_from_json(const Json& j);
Gauge load_gauge_file(const std::string& path);
void save_gauge_file(const Gauge& g, const std::string& path);

Json flat_to_json(const Flat& f);
Flat flat_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

const char* status_name(CoapproxStatus s);
Json coapprox_to_json(const CoapproxResult& r);

Json chord_witness_to_json(const ChordWitness& w);
ChordWitness chord_witness_from_json(const Json& j);
Json separation_to_json(const SeparationWitness& w);

Json suite_report_to_json(const SuiteReport& r);

}  // namespace mink

#endif  // MINK_SERIALIZE_HPP
