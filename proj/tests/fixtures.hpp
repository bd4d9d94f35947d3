#pragma once

#include "hexmono/dendrite.hpp"
#include "hexmono/patch.hpp"
#include "hexmono/ruleset_io.hpp"
#include "hexmono/tilemodel.hpp"

#include <json.hpp>

#include <array>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using hexmono::Cell;

struct StrokeSpec {
    std::string layer;
    std::string from;
    std::string to;
};

// Single-variant, chirality-R rule set document.
inline std::string one_face_doc(const std::string& name, const std::array<std::string, 6>& edges,
                                const std::array<std::string, 6>& corners,
                                const std::vector<std::array<std::string, 2>>& k1,
                                const std::vector<std::array<std::string, 2>>& k3, std::optional<int> male,
                                const std::vector<StrokeSpec>& strokes = {})
{
    using nlohmann::ordered_json;
    ordered_json face = {{"variant", "T"}, {"chirality", "R"}};
    ordered_json doc;
    doc["name"] = name;
    doc["variants"] = {"T"};
    doc["base_edge_labels"] = ordered_json::array({face});
    doc["base_edge_labels"][0]["labels"] = edges;
    doc["base_corner_labels"] = ordered_json::array({face});
    doc["base_corner_labels"][0]["labels"] = corners;
    doc["k1_compat"] = k1;
    doc["k3_compat"] = k3;
    doc["male_edge_offset"] = ordered_json::array({face});
    doc["male_edge_offset"][0]["edge"] = male ? ordered_json(*male) : ordered_json(nullptr);
    ordered_json st = ordered_json::array();
    for (const auto& s : strokes)
        st.push_back({{"layer", s.layer}, {"from", s.from}, {"to", s.to}});
    doc["motif_strokes"] = ordered_json::array({face});
    doc["motif_strokes"][0]["strokes"] = st;
    return doc.dump(2);
}

inline hexmono::RuleSetPtr make(const std::string& doc)
{
    return std::make_shared<const hexmono::RuleSet>(hexmono::load_ruleset(doc));
}

inline std::array<std::string, 6> all(const std::string& s) { return {s, s, s, s, s, s}; }

/// Labels everywhere, nothing compatible.
inline hexmono::RuleSetPtr empty_k1() { return make(one_face_doc("empty_k1", all("e"), all("c"), {}, {{"c", "c"}}, {})); }

/// Unconstrained labels with a male edge at base index 0 and a dendrite stroke.
inline hexmono::RuleSetPtr free_male()
{
    return make(one_face_doc("free_male", all("e"), all("c"), {{"e", "e"}}, {{"c", "c"}}, 0,
                             {{"dendrite", "c", "m0"}}));
}

/// Three arcs around alternating corners; three mutually adjacent cells at
/// orientation 0 close one triangle.
inline hexmono::RuleSetPtr arcs()
{
    return make(one_face_doc("arcs", all("e"), all("c"), {{"e", "e"}}, {{"c", "c"}}, {},
                             {{"stripe", "m0", "m1"}, {"stripe", "m2", "m3"}, {"stripe", "m4", "m5"}}));
}

inline hexmono::TileState st(int orientation, hexmono::Chirality c = hexmono::Chirality::R)
{
    return {0, orientation, c};
}

/// Random graph with out-degree <= 1 and no self loops on 1..100 nodes, as
/// index pairs and as a MotifGraph over cells (i, 0). About a third start as
/// forests (edges toward smaller indices) so both outcomes are common.
struct RandomGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    hexmono::MotifGraph graph;
};

inline RandomGraph random_graph(std::mt19937_64& rng)
{
    RandomGraph g;
    g.n = 1 + static_cast<int>(rng() % 100);
    const int mode = static_cast<int>(rng() % 3);
    const double density = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < g.n; ++i) {
        if (coin(rng) > density || g.n == 1)
            continue;
        int j;
        if (mode == 0 && i > 0)
            j = static_cast<int>(rng() % static_cast<unsigned>(i));
        else if (mode == 0)
            continue;
        else
            do
                j = static_cast<int>(rng() % static_cast<unsigned>(g.n));
            while (j == i);
        g.edges.emplace_back(i, j);
    }
    for (int i = 0; i < g.n; ++i)
        g.graph.nodes.push_back({i, 0});
    for (const auto& [a, b] : g.edges)
        g.graph.edges.emplace(Cell{a, 0}, Cell{b, 0});
    return g;
}

} // namespace fixtures
