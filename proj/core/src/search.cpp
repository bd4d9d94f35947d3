#include "hexmono/search.hpp"

#include "hexmono/ruleset_io.hpp"
#include "internal/json_text.hpp"

namespace hexmono {

using detail::Json;

namespace {

Json substitute(const Json& node, const std::map<std::string, Json>& values)
{
    if (node.is_string()) {
        const auto& s = node.get_ref<const std::string&>();
        if (s.size() > 1 && s[0] == '$') {
            const auto it = values.find(s.substr(1));
            if (it == values.end())
                throw RuleSetError(s, "placeholder without a parameter");
            return it->second;
        }
        return node;
    }
    if (node.is_array()) {
        Json out = Json::array();
        for (const auto& v : node)
            out.push_back(substitute(v, values));
        return out;
    }
    if (node.is_object()) {
        Json out = Json::object();
        for (const auto& [k, v] : node.items())
            out[k] = substitute(v, values);
        return out;
    }
    return node;
}

} // namespace

bool passes_filter(const RuleSetPtr& ruleset, const SearchFilter& filter, std::uint64_t node_limit)
{
    SolverConfig cfg;
    cfg.node_limit = node_limit;
    if (solve_region(Region::hex(filter.region_radius), ruleset, cfg).outcome != Outcome::SAT)
        return false;
    for (const TorusBasis& b : canonical_bases(filter.max_torus_det))
        if (solve_torus(b, ruleset, cfg).outcome != Outcome::UNSAT)
            return false;
    return true;
}

SearchResult search_rulesets(const std::string& template_text, const SearchBudget& budget, const SearchFilter& filter)
{
    Json doc;
    try {
        doc = detail::parse_json(template_text);
    } catch (const std::exception& e) {
        throw RuleSetError("template", e.what());
    }
    if (!doc.is_object())
        throw RuleSetError("template", "expected an object");

    std::vector<std::string> names;
    std::vector<std::vector<Json>> domains;
    if (const auto it = doc.find("parameters"); it != doc.end()) {
        if (!it->is_object())
            throw RuleSetError("parameters", "expected an object");
        for (const auto& [name, vals] : it->items()) {
            if (!vals.is_array() || vals.empty())
                throw RuleSetError("parameters." + name, "expected a nonempty array of values");
            names.push_back(name);
            domains.emplace_back(vals.begin(), vals.end());
        }
        doc.erase("parameters");
    }

    SearchResult result;
    result.total = 1;
    for (const auto& d : domains)
        result.total *= d.size();

    std::vector<std::size_t> digit(names.size(), 0);
    for (std::size_t n = 0; n < result.total; ++n) {
        if (result.examined == budget.max_instantiations) {
            result.incomplete = true;
            break;
        }
        ++result.examined;
        std::map<std::string, Json> values;
        SearchCandidate cand;
        for (std::size_t i = 0; i < names.size(); ++i) {
            values[names[i]] = domains[i][digit[i]];
            cand.parameters.emplace_back(names[i], domains[i][digit[i]].dump());
        }
        // odometer step, last parameter fastest
        for (std::size_t i = names.size(); i-- > 0;) {
            if (++digit[i] < domains[i].size())
                break;
            digit[i] = 0;
        }

        try {
            cand.ruleset = std::make_shared<const RuleSet>(load_ruleset(substitute(doc, values).dump()));
        } catch (const RuleSetError&) {
            ++result.invalid;
            continue;
        }
        if (passes_filter(cand.ruleset, filter, budget.node_limit))
            result.survivors.push_back(std::move(cand));
    }
    return result;
}

std::string emit_search_result(const SearchResult& result)
{
    Json doc = Json::object();
    doc["total"] = result.total;
    doc["examined"] = result.examined;
    doc["invalid"] = result.invalid;
    doc["incomplete"] = result.incomplete;
    Json survivors = Json::array();
    for (const auto& c : result.survivors) {
        Json j = Json::object();
        Json params = Json::object();
        for (const auto& [k, v] : c.parameters)
            params[k] = Json::parse(v);
        j["parameters"] = std::move(params);
        j["ruleset_hash"] = ruleset_hash(*c.ruleset);
        survivors.push_back(std::move(j));
    }
    doc["survivors"] = std::move(survivors);
    return detail::canonical_dump(doc);
}

} // namespace hexmono
