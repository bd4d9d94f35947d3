#include "hexmono/tilemodel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace hexmono {

std::string_view to_string(Chirality c) { return c == Chirality::R ? "R" : "F"; }

std::optional<Chirality> parse_chirality(std::string_view s)
{
    if (s == "R")
        return Chirality::R;
    if (s == "F")
        return Chirality::F;
    return std::nullopt;
}

std::string anchor_name(int anchor)
{
    if (anchor == kCenter)
        return "c";
    return "m" + std::to_string(anchor);
}

std::optional<int> parse_anchor(std::string_view s)
{
    if (s == "c")
        return kCenter;
    if (s.size() == 2 && s[0] == 'm' && s[1] >= '0' && s[1] <= '5')
        return s[1] - '0';
    return std::nullopt;
}

namespace {

struct Point {
    double x, y;
};

Point anchor_point(int anchor)
{
    if (anchor == kCenter)
        return {0.0, 0.0};
    const double a = M_PI / 3.0 * anchor;
    return {0.5 * std::cos(a), 0.5 * std::sin(a)};
}

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// True when the segments share more than a common endpoint.
bool strokes_conflict(const Stroke& s, const Stroke& t)
{
    constexpr double eps = 1e-9;
    const Point p1 = anchor_point(s.from), p2 = anchor_point(s.to);
    const Point q1 = anchor_point(t.from), q2 = anchor_point(t.to);
    const double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);

    const auto sign = [&](double v) { return v > eps ? 1 : (v < -eps ? -1 : 0); };
    const int s1 = sign(d1), s2 = sign(d2), s3 = sign(d3), s4 = sign(d4);

    if (s1 * s2 < 0 && s3 * s4 < 0)
        return true;
    if (s1 == 0 && s2 == 0) {
        // collinear: conflict if the overlap has positive length
        const double dx = p2.x - p1.x, dy = p2.y - p1.y;
        const double len2 = dx * dx + dy * dy;
        auto param = [&](Point p) { return ((p.x - p1.x) * dx + (p.y - p1.y) * dy) / len2; };
        double a = param(q1), b = param(q2);
        if (a > b)
            std::swap(a, b);
        return std::min(1.0, b) - std::max(0.0, a) > eps;
    }
    // a touching endpoint that is not shared lies in the other segment's interior
    const auto same = [](Point a, Point b) { return std::abs(a.x - b.x) < 1e-9 && std::abs(a.y - b.y) < 1e-9; };
    if (s1 == 0 && !same(p1, q1) && !same(p1, q2) && s3 * s4 <= 0)
        return true;
    if (s2 == 0 && !same(p2, q1) && !same(p2, q2) && s3 * s4 <= 0)
        return true;
    if (s3 == 0 && !same(q1, p1) && !same(q1, p2) && s1 * s2 <= 0)
        return true;
    if (s4 == 0 && !same(q2, p1) && !same(q2, p2) && s1 * s2 <= 0)
        return true;
    return false;
}

std::string face_key(const FaceData& f) { return f.variant + "/" + std::string(to_string(f.chirality)); }

} // namespace

RuleSet RuleSet::build(RuleSetData data)
{
    if (data.name.empty())
        throw RuleSetError("name", "must be a nonempty string");
    if (data.variants.empty())
        throw RuleSetError("variants", "at least one variant is required");
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < data.variants.size(); ++i) {
            if (data.variants[i].empty())
                throw RuleSetError("variants[" + std::to_string(i) + "]", "empty variant name");
            if (!seen.insert(data.variants[i]).second)
                throw RuleSetError("variants[" + std::to_string(i) + "]", "duplicate variant '" + data.variants[i] + "'");
        }
    }

    RuleSet rs;
    const std::size_t nv = data.variants.size();
    rs.face_index_.assign(nv * 2, -1);

    const auto variant_index = [&](const std::string& v) -> int {
        const auto it = std::find(data.variants.begin(), data.variants.end(), v);
        return it == data.variants.end() ? -1 : static_cast<int>(it - data.variants.begin());
    };

    if (data.faces.empty())
        throw RuleSetError("base_edge_labels", "no faces declared");

    std::stable_sort(data.faces.begin(), data.faces.end(), [&](const FaceData& a, const FaceData& b) {
        return std::pair(variant_index(a.variant), a.chirality) < std::pair(variant_index(b.variant), b.chirality);
    });

    std::size_t state_count = 0;
    for (std::size_t i = 0; i < data.faces.size(); ++i) {
        const FaceData& f = data.faces[i];
        const int v = variant_index(f.variant);
        const std::string where = "faces[" + face_key(f) + "]";
        if (v < 0)
            throw RuleSetError(where, "unknown variant '" + f.variant + "'");
        const std::size_t slot = static_cast<std::size_t>(v) * 2 + static_cast<std::size_t>(f.chirality);
        if (rs.face_index_[slot] >= 0)
            throw RuleSetError(where, "duplicate face");
        rs.face_index_[slot] = static_cast<int>(i);
        for (int k = 0; k < 6; ++k) {
            if (f.edge_labels[k].empty())
                throw RuleSetError("base_edge_labels[" + face_key(f) + "][" + std::to_string(k) + "]",
                                   "missing edge label for variant " + f.variant + " index " + std::to_string(k));
            if (f.corner_labels[k].empty())
                throw RuleSetError("base_corner_labels[" + face_key(f) + "][" + std::to_string(k) + "]",
                                   "missing corner label for variant " + f.variant + " index " + std::to_string(k));
        }
        if (f.male_edge_offset && (*f.male_edge_offset < 0 || *f.male_edge_offset > 5))
            throw RuleSetError("male_edge_offset[" + face_key(f) + "]", "edge must be in 0..5 or null");
        for (std::size_t s = 0; s < f.strokes.size(); ++s) {
            const Stroke& st = f.strokes[s];
            const std::string sp = "motif_strokes[" + face_key(f) + "][" + std::to_string(s) + "]";
            if (st.layer.empty())
                throw RuleSetError(sp, "empty layer tag");
            if (st.from < 0 || st.from > kCenter || st.to < 0 || st.to > kCenter)
                throw RuleSetError(sp, "anchor out of range");
            if (st.from == st.to)
                throw RuleSetError(sp, "stroke endpoints coincide");
            for (std::size_t t = 0; t < s; ++t)
                if (f.strokes[t].layer == st.layer && strokes_conflict(f.strokes[t], st))
                    throw RuleSetError(sp, "stroke crosses stroke " + std::to_string(t) + " on layer '" + st.layer + "'");
        }
        state_count += 6;
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (rs.face_index_[v * 2] < 0 && rs.face_index_[v * 2 + 1] < 0)
            throw RuleSetError("base_edge_labels", "variant '" + data.variants[v] + "' declares no face");
    if (state_count > kMaxStates)
        throw RuleSetError("variants", "more than " + std::to_string(kMaxStates) + " tile states");

    std::set<std::string> label_set;
    for (const FaceData& f : data.faces) {
        label_set.insert(f.edge_labels.begin(), f.edge_labels.end());
        label_set.insert(f.corner_labels.begin(), f.corner_labels.end());
    }
    rs.labels_.assign(label_set.begin(), label_set.end());
    const std::size_t nl = rs.labels_.size();

    const auto canonical_pairs = [&](std::vector<std::pair<std::string, std::string>>& pairs, const char* field,
                                     std::vector<std::uint8_t>& matrix) {
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        matrix.assign(nl * nl, 0);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [a, b] = pairs[i];
            const int ia = rs.label_id(a), ib = rs.label_id(b);
            if (ia < 0 || ib < 0)
                throw RuleSetError(std::string(field) + "[" + std::to_string(i) + "]",
                                   "dangling label '" + (ia < 0 ? a : b) + "' appears in no base table");
            matrix[static_cast<std::size_t>(ia) * nl + ib] = 1;
        }
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [a, b] = pairs[i];
            if (!std::binary_search(pairs.begin(), pairs.end(), std::pair(b, a)))
                throw RuleSetError(std::string(field) + "[" + std::to_string(i) + "]",
                                   "relation is not symmetric: [" + a + ", " + b + "] without [" + b + ", " + a + "]");
        }
    };

    rs.data_ = std::move(data);
    canonical_pairs(rs.data_.k1_compat, "k1_compat", rs.k1_);
    canonical_pairs(rs.data_.k3_compat, "k3_compat", rs.k3_);

    for (const FaceData& f : rs.data_.faces) {
        std::array<int, 6> e{}, c{};
        for (int k = 0; k < 6; ++k) {
            e[k] = rs.label_id(f.edge_labels[k]);
            c[k] = rs.label_id(f.corner_labels[k]);
        }
        rs.edge_ids_.push_back(e);
        rs.corner_ids_.push_back(c);
    }
    return rs;
}

bool RuleSet::has_face(int variant, Chirality c) const
{
    if (variant < 0 || static_cast<std::size_t>(variant) >= data_.variants.size())
        return false;
    return face_index_[static_cast<std::size_t>(variant) * 2 + static_cast<std::size_t>(c)] >= 0;
}

const FaceData& RuleSet::face(int variant, Chirality c) const
{
    if (!has_face(variant, c))
        throw std::out_of_range("rule set has no such face");
    return data_.faces[static_cast<std::size_t>(face_index_[static_cast<std::size_t>(variant) * 2 + static_cast<std::size_t>(c)])];
}

int RuleSet::label_id(std::string_view label) const
{
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
        return -1;
    return static_cast<int>(it - labels_.begin());
}

bool RuleSet::male_total() const
{
    return std::all_of(data_.faces.begin(), data_.faces.end(), [](const FaceData& f) { return f.male_edge_offset.has_value(); });
}

bool RuleSet::has_male_edges() const
{
    return std::any_of(data_.faces.begin(), data_.faces.end(), [](const FaceData& f) { return f.male_edge_offset.has_value(); });
}

bool RuleSet::has_layer(std::string_view layer) const
{
    for (const FaceData& f : data_.faces)
        for (const Stroke& s : f.strokes)
            if (s.layer == layer)
                return true;
    return false;
}

std::vector<std::string> RuleSet::layers() const
{
    std::set<std::string> out;
    for (const FaceData& f : data_.faces)
        for (const Stroke& s : f.strokes)
            out.insert(s.layer);
    return {out.begin(), out.end()};
}

std::vector<TileState> enumerate_states(const RuleSet& rs)
{
    std::vector<TileState> out;
    for (int v = 0; v < static_cast<int>(rs.variants().size()); ++v)
        for (Chirality c : {Chirality::R, Chirality::F})
            if (rs.has_face(v, c))
                for (int o = 0; o < 6; ++o)
                    out.push_back({v, o, c});
    return out;
}

bool is_valid_state(const RuleSet& rs, const TileState& s)
{
    return s.orientation >= 0 && s.orientation < 6 && rs.has_face(s.variant, s.chirality);
}

const std::string& edge_label(const RuleSet& rs, const TileState& s, int e)
{
    return rs.face(s.variant, s.chirality).edge_labels[static_cast<std::size_t>(wrap6(e - s.orientation))];
}

const std::string& corner_label(const RuleSet& rs, const TileState& s, int k)
{
    return rs.face(s.variant, s.chirality).corner_labels[static_cast<std::size_t>(wrap6(k - s.orientation))];
}

std::optional<int> male_edge_abs(const RuleSet& rs, const TileState& s)
{
    const auto& off = rs.face(s.variant, s.chirality).male_edge_offset;
    if (!off)
        return std::nullopt;
    return wrap6(*off + s.orientation);
}

std::vector<Stroke> state_strokes(const RuleSet& rs, const TileState& s, std::string_view layer)
{
    std::vector<Stroke> out;
    for (const Stroke& st : rs.face(s.variant, s.chirality).strokes) {
        if (!layer.empty() && st.layer != layer)
            continue;
        out.push_back({st.layer, rotate_anchor(st.from, s.orientation), rotate_anchor(st.to, s.orientation)});
    }
    return out;
}

std::string state_to_string(const RuleSet& rs, const TileState& s)
{
    return rs.variants()[static_cast<std::size_t>(s.variant)] + ":" + std::to_string(s.orientation) + ":" +
           std::string(to_string(s.chirality));
}

StateTable::StateTable(const RuleSet& rs) : states_(enumerate_states(rs))
{
    const int n = size();
    full_ = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    for (int i = 0; i < n; ++i) {
        const TileState& s = states_[i];
        const std::size_t fi = static_cast<std::size_t>(rs.face_index_[static_cast<std::size_t>(s.variant) * 2 +
                                                                        static_cast<std::size_t>(s.chirality)]);
        std::array<int, 6> e{}, c{};
        for (int k = 0; k < 6; ++k) {
            e[k] = rs.edge_ids_[fi][wrap6(k - s.orientation)];
            c[k] = rs.corner_ids_[fi][wrap6(k - s.orientation)];
        }
        edge_.push_back(e);
        corner_.push_back(c);
        const auto male = male_edge_abs(rs, s);
        male_.push_back(male ? *male : -1);
        if (male)
            male_along_[*male] |= Mask{1} << i;
        else
            no_male_ |= Mask{1} << i;
    }
    for (int e = 0; e < 6; ++e) {
        k1_mask_[e].assign(n, 0);
        k3_minus_[e].assign(n, 0);
        k3_plus_[e].assign(n, 0);
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                if (rs.k1(edge_[s][e], edge_[t][opposite(e)]))
                    k1_mask_[e][s] |= Mask{1} << t;
                if (rs.k3(corner_[s][wrap6(e + 4)], corner_[t][wrap6(e + 1)]))
                    k3_minus_[e][s] |= Mask{1} << t;
                if (rs.k3(corner_[t][wrap6(e + 4)], corner_[s][wrap6(e + 1)]))
                    k3_plus_[e][s] |= Mask{1} << t;
            }
    }
}

int StateTable::index_of(const TileState& s) const
{
    const auto it = std::lower_bound(states_.begin(), states_.end(), s, [](const TileState& a, const TileState& b) {
        return std::tuple(a.variant, a.chirality, a.orientation) < std::tuple(b.variant, b.chirality, b.orientation);
    });
    if (it == states_.end() || *it != s)
        return -1;
    return static_cast<int>(it - states_.begin());
}

} // namespace hexmono
