#include "cwb/table_io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

namespace cwb {

using nlohmann::json;

StructureCoeffTable TableData::as_table() const {
    auto held = std::make_shared<const std::map<std::pair<int, int>, MPoly>>(entries);
    bool zero_fallback = default_zero;
    return StructureCoeffTable{
        name, [held, zero_fallback](int alpha, int gamma) {
            auto it = held->find({alpha, gamma});
            if (it != held->end()) return it->second;
            if (zero_fallback) return MPoly{};
            throw std::out_of_range("table has no entry at (" + std::to_string(alpha) +
                                    ", " + std::to_string(gamma) + ")");
        }};
}

static int require_int(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("entry missing '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw ParseError(std::string("'") + key + "' must be an integer, got " + v.dump());
    return v.get<int>();
}

static void read_entries(const json& arr, TableData& out) {
    if (!arr.is_array()) throw ParseError("entries must be an array");
    for (const json& e : arr) {
        if (!e.is_object()) throw ParseError("entry must be an object, got " + e.dump());
        int alpha = require_int(e, "alpha");
        int gamma = require_int(e, "gamma");
        if (!e.contains("poly") || !e.at("poly").is_string())
            throw ParseError("entry needs a 'poly' string");
        MPoly p = MPoly::parse(e.at("poly").get<std::string>());
        auto [it, fresh] = out.entries.emplace(std::pair{alpha, gamma}, std::move(p));
        (void)it;
        if (!fresh)
            throw ParseError("duplicate entry (" + std::to_string(alpha) + ", " +
                             std::to_string(gamma) + ")");
    }
}

TableData parse_table_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    TableData out;
    try {
        if (doc.is_array()) {
            read_entries(doc, out);
        } else if (doc.is_object()) {
            if (doc.contains("name")) {
                if (!doc.at("name").is_string()) throw ParseError("'name' must be a string");
                out.name = doc.at("name").get<std::string>();
            }
            if (doc.contains("default_zero")) {
                if (!doc.at("default_zero").is_boolean())
                    throw ParseError("'default_zero' must be a boolean");
                out.default_zero = doc.at("default_zero").get<bool>();
            }
            if (!doc.contains("entries")) throw ParseError("table object needs 'entries'");
            read_entries(doc.at("entries"), out);
        } else {
            throw ParseError("table must be a JSON array or object");
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad table JSON: ") + e.what());
    }
    return out;
}

TableData parse_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table_json(buf.str());
}

std::string table_to_json(const TableData& data) {
    json entries = json::array();
    for (const auto& [key, poly] : data.entries)
        entries.push_back(
            {{"alpha", key.first}, {"gamma", key.second}, {"poly", poly.str()}});
    json doc{{"name", data.name}, {"default_zero", data.default_zero},
             {"entries", std::move(entries)}};
    return doc.dump(2);
}

TableData sample_table(const StructureCoeffTable& table, int window) {
    TableData out;
    out.name = table.name;
    for (int a = -window; a <= window; ++a)
        for (int g = -window; g <= window; ++g) {
            MPoly p = table(a, g);
            if (!p.is_zero()) out.entries.emplace(std::pair{a, g}, std::move(p));
        }
    return out;
}

}  // namespace cwb
