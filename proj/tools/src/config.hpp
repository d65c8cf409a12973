#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cli {

using json = nlohmann::ordered_json;

// schema or flag problems; exit status 2
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const json& schema();
// empty when valid; otherwise one message per violation
std::vector<std::string> validate(const json& value, const json& schema, const std::string& where = "$");
void require_valid(const json& cfg);

json load_file(const std::string& path);
// "a.b.c=value"; value is parsed as JSON when possible, else kept as a string
void apply_set(json& cfg, const std::string& assignment);
void merge_into(json& base, const json& over);

}  // namespace cli
