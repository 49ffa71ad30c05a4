#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "entrocone/boxes.hpp"
#include "entrocone/certificates.hpp"
#include "entrocone/classify.hpp"
#include "entrocone/cone.hpp"
#include "entrocone/entropy.hpp"

namespace entrocone {

// Deterministic key order everywhere.
using Json = nlohmann::ordered_json;

Json space_to_json(const CoordinateSpace& space);
SpacePtr space_from_json(const Json& j);

Json hcone_to_json(const HCone& cone);
HCone hcone_from_json(const Json& j);

Json vcone_to_json(const VCone& cone);
VCone vcone_from_json(const Json& j);

Json entropy_vector_to_json(const EntropyVector& v);
EntropyVector entropy_vector_from_json(const Json& j);

Json scenario_spec_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_spec_from_json(const Json& j);

Json report_to_json(const ClassificationReport& report);

Json certificate_to_json(const Certificate& cert, const HCone& system);

std::string dump_deterministic(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace entrocone
