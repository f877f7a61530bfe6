#pragma once

#include <string>

#include <json.hpp>

#include "gq/execution.hpp"
#include "gq/failprone.hpp"
#include "gq/resilience.hpp"
#include "gq/tightness.hpp"
#include "gq/universe.hpp"

namespace gq {

using Json = nlohmann::ordered_json;

/// `{"attributes":[{"name":..,"values":[..]},..]}`; throws SchemaError on malformed input.
AttributeSchema schema_from_json(const Json& j);
Json to_json(const AttributeSchema& s);
AttributeSchema load_schema(const std::string& path);

/// `{"belief":int,"full":[..],"partial":{"<value>":[pid,..]}}`
Json to_json(const FailproneDescriptor& d);
FailproneDescriptor descriptor_from_json(const Json& j);

Json to_json(const ProcessSet& s);
Json to_json(const GridParams& g);
Json to_json(const ResilienceVerdict& v);
Json to_json(const BoundBreakdown& b);
Json to_json(const AlphaSearchResult& r);

/// `{"schema":{..},"beliefs":{"default":int,"<pid>":int},"faults":[pid,..]}`
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::string& path);
Json to_json(const ProcessVerdict& v);
Json to_json(const SafetyReport& r);

}  // namespace gq
