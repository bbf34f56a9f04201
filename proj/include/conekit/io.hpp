#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "conekit/core.hpp"
#include "conekit/liouville.hpp"

namespace conekit {

using json = nlohmann::json;

// File could not be read or written (CLI exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 17 significant digits.
std::string format_double(double x);
// Accepts decimal strings and numbers.
double parse_double(const json& j);

// {"points": ["inf" | [re, im] | re], "angles": ["p/q" | float]}
ConeConfig config_from_json(const json& j);
json config_to_json(const ConeConfig& c);

json grid_to_json(const GridSolution& g);
GridSolution grid_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace conekit
