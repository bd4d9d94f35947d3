#include "hexmono/ruleset_io.hpp"

#include "internal/json_text.hpp"
#include "internal/shipped_rulesets.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace hexmono {

using detail::Json;

namespace {

const Json& require(const Json& obj, const char* key, const std::string& path)
{
    if (!obj.is_object())
        throw RuleSetError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
        throw RuleSetError(path + "." + key, "missing field");
    return *it;
}

std::string require_string(const Json& v, const std::string& path)
{
    if (!v.is_string())
        throw RuleSetError(path, "expected a string");
    return v.get<std::string>();
}

const Json& require_array(const Json& v, const std::string& path)
{
    if (!v.is_array())
        throw RuleSetError(path, "expected an array");
    return v;
}

struct FaceRef {
    std::string variant;
    Chirality chirality;
};

FaceRef parse_face_ref(const Json& entry, const std::string& path)
{
    FaceRef ref;
    ref.variant = require_string(require(entry, "variant", path), path + ".variant");
    const std::string c = require_string(require(entry, "chirality", path), path + ".chirality");
    const auto chir = parse_chirality(c);
    if (!chir)
        throw RuleSetError(path + ".chirality", "expected \"R\" or \"F\", got \"" + c + "\"");
    ref.chirality = *chir;
    return ref;
}

std::string key_of(const FaceRef& r) { return r.variant + "/" + std::string(to_string(r.chirality)); }

std::array<std::string, 6> parse_labels6(const Json& entry, const std::string& path, const FaceRef& ref)
{
    const Json& labels = require_array(require(entry, "labels", path), path + ".labels");
    std::array<std::string, 6> out;
    for (std::size_t i = 0; i < 6; ++i) {
        if (i >= labels.size())
            throw RuleSetError(path + ".labels[" + std::to_string(i) + "]",
                               "missing label for variant " + key_of(ref) + " index " + std::to_string(i));
        out[i] = require_string(labels[i], path + ".labels[" + std::to_string(i) + "]");
        if (out[i].empty())
            throw RuleSetError(path + ".labels[" + std::to_string(i) + "]", "empty label");
    }
    if (labels.size() > 6)
        throw RuleSetError(path + ".labels", "expected exactly 6 labels for variant " + key_of(ref));
    return out;
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const Json& v, const std::string& path)
{
    std::vector<std::pair<std::string, std::string>> out;
    require_array(v, path);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2)
            throw RuleSetError(p, "expected a pair of labels");
        out.emplace_back(require_string(v[i][0], p + "[0]"), require_string(v[i][1], p + "[1]"));
    }
    return out;
}

RuleSet from_json(const Json& doc)
{
    if (!doc.is_object())
        throw RuleSetError("$", "rule-set document must be an object");
    static const char* const known[] = {"name",     "variants",         "base_edge_labels", "base_corner_labels",
                                        "k1_compat", "k3_compat",       "male_edge_offset", "motif_strokes"};
    for (const auto& [k, v] : doc.items()) {
        bool ok = false;
        for (const char* name : known)
            ok = ok || k == name;
        if (!ok)
            throw RuleSetError(k, "unknown field");
    }

    RuleSetData data;
    data.name = require_string(require(doc, "name", "$"), "name");
    const Json& variants = require_array(require(doc, "variants", "$"), "variants");
    for (std::size_t i = 0; i < variants.size(); ++i)
        data.variants.push_back(require_string(variants[i], "variants[" + std::to_string(i) + "]"));

    std::map<std::string, FaceData> faces;
    std::vector<std::string> order;

    const Json& edges = require_array(require(doc, "base_edge_labels", "$"), "base_edge_labels");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string p = "base_edge_labels[" + std::to_string(i) + "]";
        const FaceRef ref = parse_face_ref(edges[i], p);
        const std::string key = key_of(ref);
        if (faces.contains(key))
            throw RuleSetError(p, "duplicate entry for " + key);
        FaceData f;
        f.variant = ref.variant;
        f.chirality = ref.chirality;
        f.edge_labels = parse_labels6(edges[i], p, ref);
        faces.emplace(key, std::move(f));
        order.push_back(key);
    }

    // every other per-face table must cover exactly the faces declared above
    const auto per_face = [&](const char* field, auto&& apply) {
        const Json& arr = require_array(require(doc, field, "$"), field);
        std::map<std::string, bool> seen;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = std::string(field) + "[" + std::to_string(i) + "]";
            const FaceRef ref = parse_face_ref(arr[i], p);
            const std::string key = key_of(ref);
            const auto it = faces.find(key);
            if (it == faces.end())
                throw RuleSetError(p, "entry for " + key + " which has no edge labels");
            if (seen[key])
                throw RuleSetError(p, "duplicate entry for " + key);
            seen[key] = true;
            apply(arr[i], p, ref, it->second);
        }
        for (const auto& key : order)
            if (!seen[key])
                throw RuleSetError(field, "missing entry for " + key);
    };

    per_face("base_corner_labels", [](const Json& e, const std::string& p, const FaceRef& ref, FaceData& f) {
        f.corner_labels = parse_labels6(e, p, ref);
    });
    data.k1_compat = parse_pairs(require(doc, "k1_compat", "$"), "k1_compat");
    data.k3_compat = parse_pairs(require(doc, "k3_compat", "$"), "k3_compat");
    per_face("male_edge_offset", [](const Json& e, const std::string& p, const FaceRef&, FaceData& f) {
        const Json& edge = require(e, "edge", p);
        if (edge.is_null())
            f.male_edge_offset.reset();
        else if (edge.is_number_integer())
            f.male_edge_offset = edge.get<int>();
        else
            throw RuleSetError(p + ".edge", "expected an integer in 0..5 or null");
    });
    per_face("motif_strokes", [](const Json& e, const std::string& p, const FaceRef&, FaceData& f) {
        const Json& strokes = require_array(require(e, "strokes", p), p + ".strokes");
        for (std::size_t i = 0; i < strokes.size(); ++i) {
            const std::string sp = p + ".strokes[" + std::to_string(i) + "]";
            Stroke s;
            s.layer = require_string(require(strokes[i], "layer", sp), sp + ".layer");
            const std::string from = require_string(require(strokes[i], "from", sp), sp + ".from");
            const std::string to = require_string(require(strokes[i], "to", sp), sp + ".to");
            const auto a = parse_anchor(from), b = parse_anchor(to);
            if (!a)
                throw RuleSetError(sp + ".from", "invalid anchor \"" + from + "\" (expected m0..m5 or c)");
            if (!b)
                throw RuleSetError(sp + ".to", "invalid anchor \"" + to + "\" (expected m0..m5 or c)");
            s.from = *a;
            s.to = *b;
            f.strokes.push_back(std::move(s));
        }
    });

    for (const auto& key : order)
        data.faces.push_back(std::move(faces.at(key)));
    return RuleSet::build(std::move(data));
}

Json face_ref_json(const FaceData& f)
{
    Json j = Json::object();
    j["variant"] = f.variant;
    j["chirality"] = std::string(to_string(f.chirality));
    return j;
}

} // namespace

RuleSet load_ruleset(const std::string& text)
{
    Json doc;
    try {
        doc = detail::parse_json(text);
    } catch (const std::runtime_error& e) {
        throw RuleSetError("$", e.what());
    }
    return from_json(doc);
}

RuleSet load_ruleset_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw RuleSetError("$", "cannot open rule-set file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_ruleset(ss.str());
}

std::string emit_ruleset(const RuleSet& rs)
{
    const RuleSetData& d = rs.data();
    Json doc = Json::object();
    doc["name"] = d.name;
    doc["variants"] = d.variants;

    Json edges = Json::array(), corners = Json::array(), male = Json::array(), strokes = Json::array();
    for (const FaceData& f : d.faces) {
        Json e = face_ref_json(f);
        e["labels"] = Json(f.edge_labels);
        edges.push_back(std::move(e));

        Json c = face_ref_json(f);
        c["labels"] = Json(f.corner_labels);
        corners.push_back(std::move(c));

        Json m = face_ref_json(f);
        m["edge"] = f.male_edge_offset ? Json(*f.male_edge_offset) : Json(nullptr);
        male.push_back(std::move(m));

        Json s = face_ref_json(f);
        Json list = Json::array();
        for (const Stroke& st : f.strokes) {
            Json one = Json::object();
            one["layer"] = st.layer;
            one["from"] = anchor_name(st.from);
            one["to"] = anchor_name(st.to);
            list.push_back(std::move(one));
        }
        s["strokes"] = std::move(list);
        strokes.push_back(std::move(s));
    }
    const auto pairs = [](const std::vector<std::pair<std::string, std::string>>& ps) {
        Json arr = Json::array();
        for (const auto& [a, b] : ps)
            arr.push_back(Json::array({a, b}));
        return arr;
    };
    doc["base_edge_labels"] = std::move(edges);
    doc["base_corner_labels"] = std::move(corners);
    doc["k1_compat"] = pairs(d.k1_compat);
    doc["k3_compat"] = pairs(d.k3_compat);
    doc["male_edge_offset"] = std::move(male);
    doc["motif_strokes"] = std::move(strokes);
    return detail::canonical_dump(doc);
}

std::string ruleset_hash(const RuleSet& rs) { return detail::fnv1a_hex(emit_ruleset(rs)); }

std::vector<std::string> shipped_ruleset_names()
{
    std::vector<std::string> out;
    for (const auto& entry : detail::shipped_rulesets())
        out.emplace_back(entry.name);
    return out;
}

std::string_view shipped_ruleset_text(std::string_view name)
{
    for (const auto& entry : detail::shipped_rulesets())
        if (entry.name == name)
            return entry.text;
    return {};
}

RuleSetPtr shipped_ruleset(std::string_view name)
{
    static std::mutex mutex;
    static std::map<std::string, RuleSetPtr, std::less<>> cache;
    std::lock_guard lock(mutex);
    if (const auto it = cache.find(name); it != cache.end())
        return it->second;
    const std::string_view text = shipped_ruleset_text(name);
    if (text.empty())
        throw std::invalid_argument("unknown rule set '" + std::string(name) + "'");
    auto rs = std::make_shared<const RuleSet>(load_ruleset(std::string(text)));
    cache.emplace(std::string(name), rs);
    return rs;
}

RuleSetPtr resolve_ruleset(const std::string& name_or_path)
{
    if (!shipped_ruleset_text(name_or_path).empty())
        return shipped_ruleset(name_or_path);
    if (std::filesystem::exists(name_or_path))
        return std::make_shared<const RuleSet>(load_ruleset_file(name_or_path));
    throw std::invalid_argument("unknown rule set '" + name_or_path + "' (not a shipped name or a readable file)");
}

} // namespace hexmono
