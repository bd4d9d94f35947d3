#include "internal/json_text.hpp"

#include <cstdio>
#include <stdexcept>

namespace hexmono::detail {

namespace {

constexpr std::size_t kInlineWidth = 100;

bool is_flat(const Json& v)
{
    if (v.is_array()) {
        for (const auto& e : v)
            if (e.is_structured())
                return false;
        return true;
    }
    if (v.is_object()) {
        for (const auto& [k, e] : v.items())
            if (e.is_object() || (e.is_array() && !is_flat(e)))
                return false;
        return true;
    }
    return true;
}

std::string compact(const Json& v)
{
    if (v.is_array()) {
        std::string out = "[";
        bool first = true;
        for (const auto& e : v) {
            if (!first)
                out += ", ";
            first = false;
            out += compact(e);
        }
        return out + "]";
    }
    if (v.is_object()) {
        std::string out = "{";
        bool first = true;
        for (const auto& [k, e] : v.items()) {
            if (!first)
                out += ", ";
            first = false;
            out += Json(k).dump() + ": " + compact(e);
        }
        return out + "}";
    }
    return v.dump();
}

void write(const Json& v, int depth, std::string& out)
{
    if (!v.is_structured()) {
        out += v.dump();
        return;
    }
    if (v.empty()) {
        out += v.is_array() ? "[]" : "{}";
        return;
    }
    if (is_flat(v) && (v.is_array() || depth > 0)) {
        std::string line = compact(v);
        if (line.size() <= kInlineWidth) {
            out += line;
            return;
        }
    }
    const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
    const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
    out += v.is_array() ? "[\n" : "{\n";
    bool first = true;
    if (v.is_array()) {
        for (const auto& e : v) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad;
            write(e, depth + 1, out);
        }
    } else {
        for (const auto& [k, e] : v.items()) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad + Json(k).dump() + ": ";
            write(e, depth + 1, out);
        }
    }
    out += "\n" + close_pad + (v.is_array() ? "]" : "}");
}

} // namespace

std::string canonical_dump(const Json& doc)
{
    std::string out;
    write(doc, 0, out);
    out += "\n";
    return out;
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace hexmono::detail
