#include "hexmono/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace hexmono {

std::string_view to_string(Style s)
{
    switch (s) {
    case Style::Outline: return "outline";
    case Style::Stripes: return "stripes";
    case Style::Dendrite: return "dendrite";
    case Style::Joints: return "joints";
    case Style::Rhombi: return "rhombi";
    }
    return "?";
}

std::optional<Style> parse_style(std::string_view s)
{
    for (Style st : {Style::Outline, Style::Stripes, Style::Dendrite, Style::Joints, Style::Rhombi})
        if (to_string(st) == s)
            return st;
    return std::nullopt;
}

Palette Palette::defaults()
{
    return {{
        {"background", "#ffffff"},
        {"outline", "#333333"},
        {"fill", "#f4f1e8"},
        {"stripe", "#111111"},
        {"dendrite", "#b03a2e"},
        {"male", "#7f8c8d"},
        {"female", "#c8c8c8"},
        {"rhomb0", "#e8c547"},
        {"rhomb1", "#5c80bc"},
        {"rhomb2", "#4d5061"},
    }};
}

const std::string& Palette::operator[](const std::string& key) const
{
    const auto it = colors.find(key);
    if (it == colors.end())
        throw std::invalid_argument("palette has no color '" + key + "'");
    return it->second;
}

void Palette::apply(std::string_view text)
{
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
            throw std::invalid_argument("palette entry '" + std::string(item) + "' is not key=color");
        const std::string key(item.substr(0, eq));
        if (!colors.contains(key))
            throw std::invalid_argument("unknown palette key '" + key + "'");
        colors[key] = std::string(item.substr(eq + 1));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
}

namespace {

// Points in sextupled axial units: center 6c, edge midpoint 6c + 3 dir(e),
// corner k at 6c + 2 (dir(k) + dir(k+1)).
struct P6 {
    int q;
    int r;
};

P6 center6(const Cell& c) { return {6 * c.q, 6 * c.r}; }

P6 midpoint6(const Cell& c, int e)
{
    const Cell d = direction(e);
    return {6 * c.q + 3 * d.q, 6 * c.r + 3 * d.r};
}

P6 corner6(const Cell& c, int k)
{
    const Cell d = direction(k) + direction(k + 1);
    return {6 * c.q + 2 * d.q, 6 * c.r + 2 * d.r};
}

P6 anchor6(const Cell& c, int anchor) { return anchor == kCenter ? center6(c) : midpoint6(c, anchor); }

std::string fmt(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000")
        s = "0.000";
    return s;
}

class Canvas {
public:
    explicit Canvas(double size) : size_(size) {}

    double x(const P6& p) const { return size_ * (p.q + p.r / 2.0) / 6.0; }
    double y(const P6& p) const { return size_ * (p.r * std::sqrt(3.0) / 2.0) / 6.0; }
    std::string xy(const P6& p) const { return fmt(x(p)) + "," + fmt(y(p)); }

    void include(const P6& p)
    {
        min_x_ = std::min(min_x_, x(p));
        max_x_ = std::max(max_x_, x(p));
        min_y_ = std::min(min_y_, y(p));
        max_y_ = std::max(max_y_, y(p));
    }

    std::string view_box() const
    {
        if (min_x_ > max_x_)
            return "0.000 0.000 " + fmt(size_) + " " + fmt(size_);
        const double pad = size_ / 4;
        return fmt(min_x_ - pad) + " " + fmt(min_y_ - pad) + " " + fmt(max_x_ - min_x_ + 2 * pad) + " " +
               fmt(max_y_ - min_y_ + 2 * pad);
    }

    std::string polygon(const std::vector<P6>& pts) const
    {
        std::string d = "M";
        for (std::size_t i = 0; i < pts.size(); ++i)
            d += (i ? " L" : "") + xy(pts[i]);
        return d + " Z";
    }

private:
    double size_;
    double min_x_ = std::numeric_limits<double>::infinity();
    double max_x_ = -std::numeric_limits<double>::infinity();
    double min_y_ = std::numeric_limits<double>::infinity();
    double max_y_ = -std::numeric_limits<double>::infinity();
};

std::string_view motif_layer(Style s)
{
    switch (s) {
    case Style::Stripes: return "stripe";
    case Style::Dendrite: return "dendrite";
    default: return {};
    }
}

std::string cell_attrs(const Cell& c) { return " data-q=\"" + std::to_string(c.q) + "\" data-r=\"" + std::to_string(c.r) + "\""; }

std::string render(const std::vector<std::pair<Cell, TileState>>& tiles, const RuleSet& rs, const RenderOptions& o)
{
    const std::string_view layer = motif_layer(o.style);
    if (!layer.empty() && !rs.has_layer(layer))
        throw std::invalid_argument("style '" + std::string(to_string(o.style)) + "' needs strokes on layer '" +
                                    std::string(layer) + "', which rule set '" + rs.name() + "' does not declare");
    if (!(o.size > 0))
        throw std::invalid_argument("cell size must be positive");
    const Palette& pal = o.palette;
    Canvas cv(o.size);
    for (const auto& [c, s] : tiles)
        for (int k = 0; k < 6; ++k)
            cv.include(corner6(c, k));

    const std::string line_w = fmt(o.size / 20);
    std::string cells, overlay;
    for (const auto& [c, s] : tiles) {
        std::vector<P6> hex;
        for (int k = 0; k < 6; ++k)
            hex.push_back(corner6(c, k));
        const std::string fill = o.style == Style::Rhombi ? "none" : pal["fill"];
        cells += "  <path class=\"hex\"" + cell_attrs(c) + " d=\"" + cv.polygon(hex) + "\" fill=\"" + fill +
                 "\" stroke=\"" + pal["outline"] + "\" stroke-width=\"" + line_w + "\"/>\n";

        std::string g;
        switch (o.style) {
        case Style::Outline:
            break;
        case Style::Stripes:
        case Style::Dendrite: {
            const std::string colour = pal[std::string(layer)];
            for (const Stroke& st : state_strokes(rs, s, layer))
                g += "    <line x1=\"" + fmt(cv.x(anchor6(c, st.from))) + "\" y1=\"" + fmt(cv.y(anchor6(c, st.from))) +
                     "\" x2=\"" + fmt(cv.x(anchor6(c, st.to))) + "\" y2=\"" + fmt(cv.y(anchor6(c, st.to))) +
                     "\" stroke=\"" + colour + "\" stroke-width=\"" + fmt(o.size / 6) +
                     "\" stroke-linecap=\"round\"/>\n";
            break;
        }
        case Style::Joints: {
            const auto male = male_edge_abs(rs, s);
            for (int e = 0; e < 6; ++e) {
                // Tab: the band between edge e and the chord halfway to the center.
                const P6 a = corner6(c, e + 5), b = corner6(c, e), ctr = center6(c);
                const P6 ia{(a.q + ctr.q) / 2, (a.r + ctr.r) / 2};
                const P6 ib{(b.q + ctr.q) / 2, (b.r + ctr.r) / 2};
                if (male && *male == e)
                    g += "    <path class=\"male\" d=\"" + cv.polygon({a, b, ib, ia}) + "\" fill=\"" + pal["male"] +
                         "\"/>\n";
                else
                    g += "    <line class=\"female\" x1=\"" + fmt(cv.x(ia)) + "\" y1=\"" + fmt(cv.y(ia)) + "\" x2=\"" +
                         fmt(cv.x(ib)) + "\" y2=\"" + fmt(cv.y(ib)) + "\" stroke=\"" + pal["female"] +
                         "\" stroke-width=\"" + line_w + "\" stroke-dasharray=\"" + fmt(o.size / 12) + "\"/>\n";
            }
            break;
        }
        case Style::Rhombi: {
            const P6 ctr = center6(c);
            for (int j = 0; j < 3; ++j) {
                const int colour = (j + s.orientation + (s.chirality == Chirality::F ? 1 : 0)) % 3;
                g += "    <path class=\"rhomb\" d=\"" +
                     cv.polygon({ctr, corner6(c, 2 * j), corner6(c, 2 * j + 1), corner6(c, 2 * j + 2)}) +
                     "\" fill=\"" + pal["rhomb" + std::to_string(colour)] + "\"/>\n";
            }
            break;
        }
        }
        if (!g.empty())
            overlay += "  <g class=\"tile\"" + cell_attrs(c) + ">\n" + g + "  </g>\n";
    }

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + cv.view_box() + "\">\n";
    svg += "<rect x=\"-100000\" y=\"-100000\" width=\"200000\" height=\"200000\" fill=\"" + pal["background"] + "\"/>\n";
    svg += "<g id=\"cells\">\n" + cells + "</g>\n";
    svg += "<g id=\"" + std::string(to_string(o.style)) + "\">\n" + overlay + "</g>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace

std::string render_svg(const Patch& patch, const RenderOptions& options)
{
    std::vector<std::pair<Cell, TileState>> tiles(patch.assignment().begin(), patch.assignment().end());
    return render(tiles, patch.ruleset(), options);
}

std::string render_tile(const TileState& state, const RuleSetPtr& ruleset, const RenderOptions& options)
{
    if (!is_valid_state(*ruleset, state))
        throw std::invalid_argument("state is not declared by rule set '" + ruleset->name() + "'");
    return render({{Cell{}, state}}, *ruleset, options);
}

} // namespace hexmono
