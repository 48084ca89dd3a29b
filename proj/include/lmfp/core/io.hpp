#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lmfp/core/error.hpp"
#include "lmfp/core/random.hpp"

namespace lmfp {

using json = nlohmann::json;

/// Calls `fn(line_number, object)` for every non-blank line of a JSONL file.
/// Line numbers are 1-based.
inline void for_each_jsonl(const std::filesystem::path& path,
                           const std::function<void(std::size_t, const json&)>& fn) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(path.string(), lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object()) throw ParseError(path.string(), lineno, "expected a JSON object");
        fn(lineno, obj);
    }
}

/// Field accessor that reports the field name and line on failure.
inline const json& require_field(const json& obj, const char* name, json::value_t type,
                                 const std::string& source, std::size_t line) {
    auto it = obj.find(name);
    if (it == obj.end()) throw ParseError(source, line, std::string("missing field '") + name + "'");
    const bool ok = it->type() == type ||
                    (type == json::value_t::number_float && it->is_number()) ||
                    (type == json::value_t::number_integer && it->is_number_integer());
    if (!ok) throw ParseError(source, line, std::string("field '") + name + "' has wrong type");
    return *it;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const std::filesystem::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), 0, std::string("invalid JSON: ") + e.what());
    }
}

/// Writes via a temporary file and rename so readers never see partial output.
inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp);
        out << contents;
    }
    std::filesystem::rename(tmp, path);
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    write_file(path, j.dump(2) + "\n");
}

/// 64-bit FNV-1a digest of a file, hex encoded.
inline std::string file_digest(const std::filesystem::path& path) {
    const std::string data = read_file(path);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return buf;
}

/// Shortest round-trip formatting for CSV cells.
inline std::string fmt_double(double v) {
    return json(v).dump();
}

}  // namespace lmfp
