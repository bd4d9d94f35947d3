#include "hexmono/patch.hpp"

#include "hexmono/ruleset_io.hpp"
#include "internal/json_text.hpp"

namespace hexmono {

using detail::Json;

const TileState* Patch::state_at(const Cell& c) const
{
    const auto it = assignment_.find(c);
    return it == assignment_.end() ? nullptr : &it->second;
}

void Patch::assign(const Cell& c, const TileState& s)
{
    if (!region_.contains(c))
        throw std::invalid_argument("cell " + to_string(c) + " is outside the region");
    if (!ruleset_ || !is_valid_state(*ruleset_, s))
        throw std::invalid_argument("state is not declared by the rule set");
    assignment_[c] = s;
}

std::string emit_patch(const Patch& patch)
{
    Json doc = Json::object();
    doc["ruleset"] = patch.ruleset().name();
    doc["ruleset_hash"] = ruleset_hash(patch.ruleset());
    Json region = Json::object();
    if (patch.region().kind() == Region::Kind::Hex) {
        region["kind"] = "hex";
        region["radius"] = patch.region().radius();
    } else {
        region["kind"] = "cells";
        Json cells = Json::array();
        for (const Cell& c : patch.region().cells())
            cells.push_back(Json::array({c.q, c.r}));
        region["cells"] = std::move(cells);
    }
    doc["region"] = std::move(region);
    Json assignment = Json::array();
    for (const auto& [c, s] : patch.assignment()) {
        Json e = Json::object();
        e["q"] = c.q;
        e["r"] = c.r;
        e["variant"] = patch.ruleset().variants()[static_cast<std::size_t>(s.variant)];
        e["orientation"] = s.orientation;
        e["chirality"] = std::string(to_string(s.chirality));
        assignment.push_back(std::move(e));
    }
    doc["assignment"] = std::move(assignment);
    return detail::canonical_dump(doc);
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw PatchParseError(where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object())
        fail(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
        fail(where + "." + key, "missing field");
    return *it;
}

int int_field(const Json& obj, const char* key, const std::string& where)
{
    const Json& v = field(obj, key, where);
    if (!v.is_number_integer())
        fail(where + "." + key, "expected an integer");
    return v.get<int>();
}

std::string string_field(const Json& obj, const char* key, const std::string& where)
{
    const Json& v = field(obj, key, where);
    if (!v.is_string())
        fail(where + "." + key, "expected a string");
    return v.get<std::string>();
}

} // namespace

Patch parse_patch(const std::string& text, const RuleSetPtr& ruleset)
{
    Json doc;
    try {
        doc = detail::parse_json(text);
    } catch (const std::runtime_error& e) {
        throw PatchParseError(e.what());
    }
    const std::string name = string_field(doc, "ruleset", "$");
    const std::string hash = string_field(doc, "ruleset_hash", "$");

    RuleSetPtr rs = ruleset;
    if (!rs) {
        try {
            rs = shipped_ruleset(name);
        } catch (const std::invalid_argument&) {
            fail("$.ruleset", "unknown rule set '" + name + "'");
        }
    }
    if (rs->name() != name)
        fail("$.ruleset", "document names '" + name + "' but rule set '" + rs->name() + "' was supplied");
    if (ruleset_hash(*rs) != hash)
        fail("$.ruleset_hash", "hash " + hash + " does not match rule set '" + name + "' (" + ruleset_hash(*rs) + ")");

    const Json& region_doc = field(doc, "region", "$");
    const std::string kind = string_field(region_doc, "kind", "$.region");
    Region region;
    if (kind == "hex") {
        const int radius = int_field(region_doc, "radius", "$.region");
        if (radius < 0)
            fail("$.region.radius", "must be nonnegative");
        region = Region::hex(radius);
    } else if (kind == "cells") {
        const Json& cells = field(region_doc, "cells", "$.region");
        if (!cells.is_array())
            fail("$.region.cells", "expected an array");
        std::vector<Cell> list;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const Json& c = cells[i];
            if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
                fail("$.region.cells[" + std::to_string(i) + "]", "expected [q, r]");
            list.push_back({c[0].get<int>(), c[1].get<int>()});
        }
        region = Region::from_cells(std::move(list));
    } else {
        fail("$.region.kind", "expected \"hex\" or \"cells\"");
    }

    Patch patch(std::move(region), rs);
    const Json& assignment = field(doc, "assignment", "$");
    if (!assignment.is_array())
        fail("$.assignment", "expected an array");
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const std::string where = "$.assignment[" + std::to_string(i) + "]";
        const Json& e = assignment[i];
        const Cell c{int_field(e, "q", where), int_field(e, "r", where)};
        const std::string variant = string_field(e, "variant", where);
        const auto vit = std::find(rs->variants().begin(), rs->variants().end(), variant);
        if (vit == rs->variants().end())
            fail(where + ".variant", "unknown variant '" + variant + "'");
        const int orientation = int_field(e, "orientation", where);
        if (orientation < 0 || orientation > 5)
            fail(where + ".orientation", "must be in 0..5");
        const auto chir = parse_chirality(string_field(e, "chirality", where));
        if (!chir)
            fail(where + ".chirality", "expected \"R\" or \"F\"");
        const TileState s{static_cast<int>(vit - rs->variants().begin()), orientation, *chir};
        if (patch.assigned(c))
            fail(where, "cell " + to_string(c) + " assigned twice");
        try {
            patch.assign(c, s);
        } catch (const std::invalid_argument& ex) {
            fail(where, ex.what());
        }
    }
    return patch;
}

} // namespace hexmono
