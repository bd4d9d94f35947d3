#pragma once

// Desk-scale evidence against periodicity: translation scans of finished
// patches, exhaustive torus scans, and closed loops of a motif layer.

#include "hexmono/hexgrid.hpp"
#include "hexmono/patch.hpp"
#include "hexmono/solver.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hexmono {

struct TranslationEntry {
    Cell t;
    std::size_t overlap = 0;
    bool full_match = false;
    bool low_confidence = false;
};

struct TranslationReport {
    std::string patch_id;
    std::size_t region_size = 0;
    int max_len = 0;
    double min_overlap_fraction = 0.5;
    /// Every t with |q|, |r| <= max_len, ordered by (q, r).
    std::vector<TranslationEntry> entries;

    /// Nonzero full matches that are not low confidence.
    std::vector<Cell> periods() const;
};

/// Throws std::invalid_argument unless the patch is complete.
TranslationReport scan_translations(const Patch& patch, int max_len, double min_overlap_fraction = 0.5);

std::string emit_translation_report(const TranslationReport& report);

struct TorusScanEntry {
    TorusBasis basis;
    Outcome outcome = Outcome::LIMIT;
    std::uint64_t nodes = 0;
    std::uint64_t propagations = 0;
};

struct TorusScanReport {
    std::string ruleset;
    std::string ruleset_hash;
    int max_det = 0;
    std::uint64_t node_limit = 0;
    /// One entry per canonical basis, ordered by (det, a, b).
    std::vector<TorusScanEntry> entries;

    std::size_t count(Outcome o) const;
    /// No LIMIT entries.
    bool exhaustive() const { return count(Outcome::LIMIT) == 0; }
};

struct TorusScanOptions {
    SolverConfig solver;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

TorusScanReport torus_scan(int max_det, const RuleSetPtr& ruleset, const TorusScanOptions& options = {});

/// Report document; wall time is deliberately left out so reruns are byte-identical.
std::string emit_torus_report(const TorusScanReport& report);

/// Stroke graph node: an edge midpoint or a cell center, in sextupled axial
/// coordinates (center 6c, midpoint 6c + 3 dir(e)).
struct StrokeNode {
    int q6 = 0;
    int r6 = 0;

    friend constexpr bool operator==(const StrokeNode&, const StrokeNode&) = default;
    friend constexpr auto operator<=>(const StrokeNode&, const StrokeNode&) = default;
};

StrokeNode anchor_node(const Cell& c, int anchor);

struct MotifLoop {
    /// Closed walk; walk.front() == walk.back().
    std::vector<StrokeNode> walk;
    std::size_t segments = 0;
    /// Max lattice distance between cells contributing a segment.
    int diameter = 0;
    std::vector<Cell> cells;
};

struct LoopCensus {
    std::string layer;
    std::vector<MotifLoop> loops;

    /// diameter -> number of loops
    std::map<int, std::size_t> by_diameter() const;
};

/// Bounded faces of the stroke graph after removing bridges. Throws
/// std::invalid_argument if the rule set has no strokes on `layer`.
LoopCensus loop_census(const Patch& patch, std::string_view layer);

std::string emit_loop_census(const LoopCensus& census);

} // namespace hexmono
