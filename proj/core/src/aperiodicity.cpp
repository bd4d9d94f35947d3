#include "hexmono/aperiodicity.hpp"

#include "hexmono/ruleset_io.hpp"
#include "internal/json_text.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

namespace hexmono {

using detail::Json;

std::vector<Cell> TranslationReport::periods() const
{
    std::vector<Cell> out;
    for (const auto& e : entries)
        if (e.full_match && !e.low_confidence && e.t != Cell{})
            out.push_back(e.t);
    return out;
}

TranslationReport scan_translations(const Patch& patch, int max_len, double min_overlap_fraction)
{
    if (!patch.complete())
        throw std::invalid_argument("translation scan needs a complete patch");
    if (max_len < 0)
        throw std::invalid_argument("max_len must be nonnegative");

    TranslationReport report;
    report.patch_id = detail::fnv1a_hex(emit_patch(patch));
    report.region_size = patch.region().size();
    report.max_len = max_len;
    report.min_overlap_fraction = min_overlap_fraction;

    const auto& asg = patch.assignment();
    const double threshold = min_overlap_fraction * static_cast<double>(report.region_size);
    for (int q = -max_len; q <= max_len; ++q)
        for (int r = -max_len; r <= max_len; ++r) {
            TranslationEntry e;
            e.t = {q, r};
            bool match = true;
            for (const auto& [c, s] : asg) {
                const auto it = asg.find(c + e.t);
                if (it == asg.end())
                    continue;
                ++e.overlap;
                match = match && it->second == s;
            }
            e.full_match = match;
            e.low_confidence = static_cast<double>(e.overlap) < threshold;
            report.entries.push_back(e);
        }
    return report;
}

std::string emit_translation_report(const TranslationReport& report)
{
    const auto periods = report.periods();
    std::size_t low = 0;
    for (const auto& e : report.entries)
        low += e.low_confidence ? 1 : 0;

    Json doc = Json::object();
    doc["patch_id"] = report.patch_id;
    doc["region_size"] = report.region_size;
    doc["max_len"] = report.max_len;
    doc["min_overlap_fraction"] = report.min_overlap_fraction;
    Json summary = Json::object();
    summary["vectors"] = report.entries.size();
    summary["low_confidence"] = low;
    summary["nonzero_full_matches"] = periods.size();
    summary["text"] = periods.empty()
                          ? "No nonzero translation maps the patch onto itself on an overlap of at least " +
                                std::to_string(static_cast<int>(std::lround(report.min_overlap_fraction * 100))) +
                                "% of its cells."
                          : std::to_string(periods.size()) + " nonzero translations match the patch on a large overlap.";
    doc["summary"] = std::move(summary);
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json j = Json::object();
        j["t"] = Json::array({e.t.q, e.t.r});
        j["overlap"] = e.overlap;
        j["full_match"] = e.full_match;
        j["low_confidence"] = e.low_confidence;
        entries.push_back(std::move(j));
    }
    doc["entries"] = std::move(entries);
    return detail::canonical_dump(doc);
}

std::size_t TorusScanReport::count(Outcome o) const
{
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const TorusScanEntry& e) { return e.outcome == o; }));
}

TorusScanReport torus_scan(int max_det, const RuleSetPtr& ruleset, const TorusScanOptions& options)
{
    if (max_det < 1)
        throw std::invalid_argument("max_det must be at least 1");
    TorusScanReport report;
    report.ruleset = ruleset->name();
    report.ruleset_hash = ruleset_hash(*ruleset);
    report.max_det = max_det;
    report.node_limit = options.solver.node_limit;

    const auto bases = canonical_bases(max_det);
    report.entries.resize(bases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < bases.size(); i = next++) {
            const TorusSolveResult r = solve_torus(bases[i], ruleset, options.solver);
            report.entries[i] = {r.basis, r.outcome, r.stats.nodes, r.stats.propagations};
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, bases.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    return report;
}

std::string emit_torus_report(const TorusScanReport& report)
{
    const std::size_t sat = report.count(Outcome::SAT), unsat = report.count(Outcome::UNSAT),
                      limit = report.count(Outcome::LIMIT);
    std::string text;
    const std::string scope = "canonical bases with 1 <= |det| <= " + std::to_string(report.max_det);
    if (unsat == report.entries.size())
        text = "All " + std::to_string(unsat) + " " + scope +
               " are UNSAT by exhaustive search: no periodic tiling has any of these period lattices. "
               "This is finite evidence, not a proof of aperiodicity.";
    else
        text = std::to_string(sat) + " SAT, " + std::to_string(unsat) + " UNSAT, " + std::to_string(limit) +
               " LIMIT among " + std::to_string(report.entries.size()) + " " + scope + "." +
               (sat ? " A SAT basis is a periodic tiling." : "") +
               (limit ? " LIMIT entries were not decided." : "");

    Json doc = Json::object();
    doc["ruleset"] = report.ruleset;
    doc["ruleset_hash"] = report.ruleset_hash;
    doc["max_det"] = report.max_det;
    doc["node_limit"] = report.node_limit;
    Json summary = Json::object();
    summary["bases"] = report.entries.size();
    summary["sat"] = sat;
    summary["unsat"] = unsat;
    summary["limit"] = limit;
    summary["exhaustive"] = report.exhaustive();
    summary["text"] = text;
    doc["summary"] = std::move(summary);
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json j = Json::object();
        j["det"] = e.basis.det();
        j["u"] = Json::array({e.basis.u.q, e.basis.u.r});
        j["v"] = Json::array({e.basis.v.q, e.basis.v.r});
        j["outcome"] = std::string(to_string(e.outcome));
        j["nodes"] = e.nodes;
        j["propagations"] = e.propagations;
        entries.push_back(std::move(j));
    }
    doc["entries"] = std::move(entries);
    return detail::canonical_dump(doc);
}

StrokeNode anchor_node(const Cell& c, int anchor)
{
    StrokeNode n{6 * c.q, 6 * c.r};
    if (anchor != kCenter) {
        const Cell d = direction(anchor);
        n.q6 += 3 * d.q;
        n.r6 += 3 * d.r;
    }
    return n;
}

std::map<int, std::size_t> LoopCensus::by_diameter() const
{
    std::map<int, std::size_t> out;
    for (const auto& l : loops)
        ++out[l.diameter];
    return out;
}

namespace {

struct Planar {
    double x;
    double y;
};

Planar planar(const StrokeNode& n)
{
    return {n.q6 + n.r6 / 2.0, n.r6 * std::sqrt(3.0) / 2.0};
}

struct Segment {
    int a;
    int b;
    Cell owner;
};

// Tarjan bridge finding, iterative.
std::vector<char> bridges(int n, const std::vector<Segment>& segs, const std::vector<std::vector<int>>& inc)
{
    std::vector<char> bridge(segs.size(), 0);
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    int timer = 0;
    struct Frame {
        int v;
        int via; // segment used to enter v
        std::size_t next;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] >= 0)
            continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& out = inc[static_cast<std::size_t>(f.v)];
            if (f.next < out.size()) {
                const int s = out[f.next++];
                if (s == f.via)
                    continue;
                const int w = segs[static_cast<std::size_t>(s)].a == f.v ? segs[static_cast<std::size_t>(s)].b
                                                                         : segs[static_cast<std::size_t>(s)].a;
                if (disc[static_cast<std::size_t>(w)] < 0) {
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                    stack.push_back({w, s, 0});
                } else {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
                }
                continue;
            }
            const Frame done = f;
            stack.pop_back();
            if (!stack.empty()) {
                const int p = stack.back().v;
                low[static_cast<std::size_t>(p)] =
                    std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(done.v)]);
                if (low[static_cast<std::size_t>(done.v)] > disc[static_cast<std::size_t>(p)])
                    bridge[static_cast<std::size_t>(done.via)] = 1;
            }
        }
    }
    return bridge;
}

} // namespace

LoopCensus loop_census(const Patch& patch, std::string_view layer)
{
    const RuleSet& rs = patch.ruleset();
    if (!rs.has_layer(layer))
        throw std::invalid_argument("rule set '" + rs.name() + "' has no strokes on layer '" + std::string(layer) + "'");

    LoopCensus census;
    census.layer = std::string(layer);

    std::map<StrokeNode, int> ids;
    std::vector<StrokeNode> nodes;
    auto id_of = [&](const StrokeNode& n) {
        const auto [it, inserted] = ids.emplace(n, static_cast<int>(nodes.size()));
        if (inserted)
            nodes.push_back(n);
        return it->second;
    };
    std::vector<Segment> segs;
    for (const auto& [c, s] : patch.assignment())
        for (const Stroke& st : state_strokes(rs, s, layer))
            segs.push_back({id_of(anchor_node(c, st.from)), id_of(anchor_node(c, st.to)), c});

    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> inc(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < segs.size(); ++i) {
        inc[static_cast<std::size_t>(segs[i].a)].push_back(static_cast<int>(i));
        inc[static_cast<std::size_t>(segs[i].b)].push_back(static_cast<int>(i));
    }
    const auto bridge = bridges(n, segs, inc);

    // Remaining half-edges around each node in counter-clockwise order.
    auto other = [&](int s, int v) {
        return segs[static_cast<std::size_t>(s)].a == v ? segs[static_cast<std::size_t>(s)].b
                                                        : segs[static_cast<std::size_t>(s)].a;
    };
    std::vector<std::vector<int>> ring(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto& r = ring[static_cast<std::size_t>(v)];
        for (int s : inc[static_cast<std::size_t>(v)])
            if (!bridge[static_cast<std::size_t>(s)])
                r.push_back(s);
        const Planar pv = planar(nodes[static_cast<std::size_t>(v)]);
        std::sort(r.begin(), r.end(), [&](int s, int t) {
            const Planar ps = planar(nodes[static_cast<std::size_t>(other(s, v))]);
            const Planar pt = planar(nodes[static_cast<std::size_t>(other(t, v))]);
            return std::atan2(ps.y - pv.y, ps.x - pv.x) < std::atan2(pt.y - pv.y, pt.x - pv.x);
        });
    }

    // Half-edge (s, from v): traced once each. The face stays on the left.
    std::set<std::pair<int, int>> used;
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (bridge[s0])
            continue;
        for (const int start : {segs[s0].a, segs[s0].b}) {
            if (used.contains({static_cast<int>(s0), start}))
                continue;
            std::vector<int> walk_ids{start};
            std::vector<int> walk_segs;
            int s = static_cast<int>(s0), v = start;
            while (!used.contains({s, v})) {
                used.insert({s, v});
                walk_segs.push_back(s);
                const int w = other(s, v);
                walk_ids.push_back(w);
                const auto& r = ring[static_cast<std::size_t>(w)];
                const auto pos = std::find(r.begin(), r.end(), s) - r.begin();
                s = r[static_cast<std::size_t>((pos + static_cast<long>(r.size()) - 1) % static_cast<long>(r.size()))];
                v = w;
            }
            double area = 0;
            for (std::size_t k = 0; k + 1 < walk_ids.size(); ++k) {
                const Planar p = planar(nodes[static_cast<std::size_t>(walk_ids[k])]);
                const Planar q = planar(nodes[static_cast<std::size_t>(walk_ids[k + 1])]);
                area += p.x * q.y - q.x * p.y;
            }
            if (area <= 1e-9)
                continue;

            MotifLoop loop;
            walk_ids.pop_back();
            std::rotate(walk_ids.begin(),
                        std::min_element(walk_ids.begin(), walk_ids.end(),
                                         [&](int a, int b) {
                                             return nodes[static_cast<std::size_t>(a)] <
                                                    nodes[static_cast<std::size_t>(b)];
                                         }),
                        walk_ids.end());
            for (const int id : walk_ids)
                loop.walk.push_back(nodes[static_cast<std::size_t>(id)]);
            loop.walk.push_back(loop.walk.front());
            loop.segments = walk_segs.size();
            std::set<Cell> cells;
            for (const int sg : walk_segs)
                cells.insert(segs[static_cast<std::size_t>(sg)].owner);
            loop.cells.assign(cells.begin(), cells.end());
            for (const Cell& a : loop.cells)
                for (const Cell& b : loop.cells)
                    loop.diameter = std::max(loop.diameter, hex_distance(a, b));
            census.loops.push_back(std::move(loop));
        }
    }
    std::sort(census.loops.begin(), census.loops.end(), [](const MotifLoop& a, const MotifLoop& b) {
        return std::tie(a.diameter, a.segments, a.walk) < std::tie(b.diameter, b.segments, b.walk);
    });
    return census;
}

std::string emit_loop_census(const LoopCensus& census)
{
    Json doc = Json::object();
    doc["layer"] = census.layer;
    Json by = Json::array();
    for (const auto& [d, k] : census.by_diameter())
        by.push_back(Json::array({d, k}));
    doc["loops_by_diameter"] = std::move(by);
    Json loops = Json::array();
    for (const auto& l : census.loops) {
        Json j = Json::object();
        j["segments"] = l.segments;
        j["diameter"] = l.diameter;
        Json cells = Json::array();
        for (const Cell& c : l.cells)
            cells.push_back(Json::array({c.q, c.r}));
        j["cells"] = std::move(cells);
        loops.push_back(std::move(j));
    }
    doc["loops"] = std::move(loops);
    return detail::canonical_dump(doc);
}

} // namespace hexmono
