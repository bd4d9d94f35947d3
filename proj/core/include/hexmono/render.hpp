#pragma once

// SVG output. Planar mapping of a cell center: x = size (q + r/2),
// y = size r sqrt(3)/2, every coordinate printed with three decimals. Points
// shared by neighboring cells are computed from the same integers, so they
// print identically.

#include "hexmono/patch.hpp"
#include "hexmono/tilemodel.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace hexmono {

enum class Style { Outline, Stripes, Dendrite, Joints, Rhombi };

std::string_view to_string(Style s);
std::optional<Style> parse_style(std::string_view s);

/// Named colors. Keys: background, outline, fill, stripe, dendrite, male,
/// female, rhomb0, rhomb1, rhomb2.
struct Palette {
    std::map<std::string, std::string> colors;

    static Palette defaults();
    const std::string& operator[](const std::string& key) const;
    /// Overrides from "key=color,key=color". Throws std::invalid_argument.
    void apply(std::string_view text);
};

struct RenderOptions {
    Style style = Style::Outline;
    double size = 40.0;
    Palette palette = Palette::defaults();
};

/// Throws std::invalid_argument when a motif style needs a stroke layer the
/// rule set does not have.
std::string render_svg(const Patch& patch, const RenderOptions& options = {});

/// One tile centered at the origin.
std::string render_tile(const TileState& state, const RuleSetPtr& ruleset, const RenderOptions& options = {});

} // namespace hexmono
