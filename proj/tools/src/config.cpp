#include "config.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "schema_text.hpp"

namespace cli {

const json& schema() {
    static const json s = json::parse(kRunConfigSchema);
    return s;
}

namespace {

bool type_ok(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "number") return v.is_number();
    if (t == "integer") {
        if (v.is_number_integer()) return true;
        return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
    }
    return false;
}

std::string show(const json& v) {
    std::string s = v.dump();
    return s.size() > 40 ? s.substr(0, 37) + "..." : s;
}

}  // namespace

// draft-07 subset: type, const, enum, minimum, maximum, exclusiveMinimum,
// pattern, properties, required, additionalProperties(false), items,
// minItems, maxItems
std::vector<std::string> validate(const json& v, const json& s, const std::string& at) {
    std::vector<std::string> errs;
    auto fail = [&](const std::string& m) { errs.push_back(at + ": " + m); };
    if (s.contains("type") && !type_ok(v, s["type"].get<std::string>())) {
        fail("expected " + s["type"].get<std::string>() + ", got " + show(v));
        return errs;
    }
    if (s.contains("const") && v != s["const"]) fail("must equal " + s["const"].dump());
    if (s.contains("enum")) {
        bool hit = false;
        for (auto& e : s["enum"]) hit = hit || e == v;
        if (!hit) fail(show(v) + " not in " + s["enum"].dump());
    }
    if (v.is_number()) {
        double x = v.get<double>();
        if (s.contains("minimum") && x < s["minimum"].get<double>()) fail("below minimum " + s["minimum"].dump());
        if (s.contains("maximum") && x > s["maximum"].get<double>()) fail("above maximum " + s["maximum"].dump());
        if (s.contains("exclusiveMinimum") && !(x > s["exclusiveMinimum"].get<double>()))
            fail("must exceed " + s["exclusiveMinimum"].dump());
    }
    if (v.is_string() && s.contains("pattern") &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
        fail(show(v) + " does not match " + s["pattern"].get<std::string>());
    if (v.is_object()) {
        const json* props = s.contains("properties") ? &s["properties"] : nullptr;
        if (s.contains("required"))
            for (auto& r : s["required"])
                if (!v.contains(r.get<std::string>())) fail("missing key '" + r.get<std::string>() + "'");
        for (auto& [k, x] : v.items()) {
            if (props && props->contains(k)) {
                auto sub = validate(x, (*props)[k], at + "." + k);
                errs.insert(errs.end(), sub.begin(), sub.end());
            } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
                fail("unknown key '" + k + "'");
            }
        }
    }
    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
            fail("needs at least " + s["minItems"].dump() + " items");
        if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
            fail("allows at most " + s["maxItems"].dump() + " items");
        if (s.contains("items"))
            for (std::size_t i = 0; i < v.size(); ++i) {
                auto sub = validate(v[i], s["items"], at + "[" + std::to_string(i) + "]");
                errs.insert(errs.end(), sub.begin(), sub.end());
            }
    }
    return errs;
}

void require_valid(const json& cfg) {
    auto errs = validate(cfg, schema());
    if (errs.empty()) return;
    std::string m = "configuration rejected:";
    for (auto& e : errs) m += "\n  " + e;
    throw ConfigError(m);
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

void apply_set(json& cfg, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + assignment + "'");
    std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    json* node = &cfg;
    std::stringstream ks(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ks, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (parts[i].empty()) throw ConfigError("bad key '" + key + "'");
        if (!node->contains(parts[i])) (*node)[parts[i]] = json::object();
        node = &(*node)[parts[i]];
        if (!node->is_object()) throw ConfigError("'" + key + "' descends into a non-object");
    }
    (*node)[parts.back()] = value;
}

void merge_into(json& base, const json& over) {
    for (auto& [k, v] : over.items()) {
        if (v.is_object() && base.contains(k) && base[k].is_object()) merge_into(base[k], v);
        else base[k] = v;
    }
}

}  // namespace cli
