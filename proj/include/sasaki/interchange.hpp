#pragma once

#include "sasaki/frenet.hpp"
#include "sasaki/immersion.hpp"

#include <json.hpp>
#include <string>

namespace sasaki {

using Json = nlohmann::ordered_json;

// Serializes with every floating-point number printed to 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

struct CurveDocument {
    int n = 1;
    double a = 1.0;
    int structure_index = 1;
    SampledCurve curve;
};

struct ImmersionDocument {
    int n = 1;
    double a = 1.0;
    int structure_index = 1;
    ImmersionGrid grid;
};

Json to_json(const CurveDocument& d);
Json to_json(const ImmersionDocument& d);
CurveDocument curve_from_json(const Json& j);
ImmersionDocument immersion_from_json(const Json& j);
bool is_immersion_document(const Json& j);

Json parse_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sasaki
