#include "hexmono/solver.hpp"

#include "internal/engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>
#include <unordered_map>

namespace hexmono {

using detail::Engine;
using detail::Network;

std::string_view to_string(Clause c)
{
    switch (c) {
    case Clause::K1: return "K1";
    case Clause::K3: return "K3";
    case Clause::Acyclicity: return "acyclicity";
    }
    return "?";
}

std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::SAT: return "SAT";
    case Outcome::UNSAT: return "UNSAT";
    case Outcome::LIMIT: return "LIMIT";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string k1_detail(const RuleSet& rs, const TileState& a, const TileState& b, int e)
{
    return "edge " + std::to_string(e) + ": " + edge_label(rs, a, e) + " vs " + edge_label(rs, b, e + 3);
}

std::string k3_detail(const RuleSet& rs, const TileState& plus, const TileState& minus, const K3Pair& pair)
{
    return "corners " + corner_label(rs, plus, pair.plus_corner) + " vs " + corner_label(rs, minus, pair.minus_corner);
}

bool k1_ok(const RuleSet& rs, const TileState& a, const TileState& b, int e)
{
    return rs.k1(rs.label_id(edge_label(rs, a, e)), rs.label_id(edge_label(rs, b, e + 3)));
}

bool k3_ok(const RuleSet& rs, const TileState& plus, const TileState& minus, const K3Pair& pair)
{
    return rs.k3(rs.label_id(corner_label(rs, plus, pair.plus_corner)),
                 rs.label_id(corner_label(rs, minus, pair.minus_corner)));
}

// Cycles of a partial functional graph; each reported once from its smallest node.
std::vector<std::vector<Cell>> functional_cycles(const std::map<Cell, Cell>& next)
{
    std::vector<std::vector<Cell>> out;
    std::map<Cell, int> colour; // 1 on current walk, 2 finished
    for (const auto& [start, _] : next) {
        if (colour.contains(start))
            continue;
        std::vector<Cell> walk;
        Cell cur = start;
        for (;;) {
            auto it = colour.find(cur);
            if (it != colour.end()) {
                if (it->second == 1) {
                    auto pos = std::find(walk.begin(), walk.end(), cur);
                    std::vector<Cell> cycle(pos, walk.end());
                    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
                    out.push_back(std::move(cycle));
                }
                break;
            }
            colour[cur] = 1;
            walk.push_back(cur);
            auto nx = next.find(cur);
            if (nx == next.end())
                break;
            cur = nx->second;
        }
        for (const Cell& c : walk)
            colour[c] = 2;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Engine make_engine(const StateTable& table, const Patch& patch)
{
    Engine engine(table, Network::for_region(patch.region(), table));
    for (const auto& [c, s] : patch.assignment())
        engine.fix(patch.region().index_of(c), table.index_of(s));
    return engine;
}

} // namespace

std::vector<Violation> verify_patch(const Patch& patch)
{
    std::vector<Violation> out;
    const RuleSet& rs = patch.ruleset();
    const Region& region = patch.region();
    const auto& asg = patch.assignment();

    for (const auto& [c, s] : asg)
        for (int e = 0; e < 3; ++e) {
            const Cell n = neighbor(c, e);
            auto it = asg.find(n);
            if (it != asg.end() && !k1_ok(rs, s, it->second, e))
                out.push_back({Clause::K1, {c, n}, k1_detail(rs, s, it->second, e)});
        }

    for (const Cell& a : region.cells())
        for (int e = 0; e < 3; ++e) {
            if (!region.contains(neighbor(a, e)))
                continue;
            const K3Pair pair = k3_pair(a, e);
            auto p = asg.find(pair.plus);
            auto m = asg.find(pair.minus);
            if (p == asg.end() || m == asg.end())
                continue;
            if (!k3_ok(rs, p->second, m->second, pair))
                out.push_back({Clause::K3, {pair.plus, pair.minus}, k3_detail(rs, p->second, m->second, pair)});
        }

    std::map<Cell, Cell> next;
    for (const auto& [c, s] : asg)
        if (auto male = male_edge_abs(rs, s)) {
            const Cell t = neighbor(c, *male);
            if (asg.contains(t))
                next.emplace(c, t);
        }
    for (auto& cycle : functional_cycles(next))
        out.push_back({Clause::Acyclicity, std::move(cycle), "male-edge cycle"});
    return out;
}

std::vector<TileState> legal_states(const Patch& patch, const Cell& c)
{
    const Region& region = patch.region();
    if (!region.contains(c))
        throw std::invalid_argument("cell " + to_string(c) + " is outside the region");
    if (patch.assigned(c))
        throw std::invalid_argument("cell " + to_string(c) + " is already assigned");
    if (!verify_patch(patch).empty())
        return {};

    const RuleSet& rs = patch.ruleset();
    const auto& asg = patch.assignment();

    // The six lattice edges whose K3 clause has c as one of its third cells.
    struct K3Partner {
        Cell other;
        K3Pair pair;
        bool c_is_plus;
    };
    std::vector<K3Partner> partners;
    for (int k = 0; k < 6; ++k) {
        Cell a = neighbor(c, k);
        Cell b = neighbor(c, k + 1);
        if (!region.contains(a) || !region.contains(b))
            continue;
        int e = direction_index(b - a);
        if (e >= 3) {
            std::swap(a, b);
            e -= 3;
        }
        const K3Pair pair = k3_pair(a, e);
        const bool plus = pair.plus == c;
        const Cell other = plus ? pair.minus : pair.plus;
        if (asg.contains(other))
            partners.push_back({other, pair, plus});
    }

    std::vector<TileState> out;
    for (const TileState& s : enumerate_states(rs)) {
        bool ok = true;
        for (int e = 0; e < 6 && ok; ++e) {
            auto it = asg.find(neighbor(c, e));
            if (it != asg.end())
                ok = k1_ok(rs, s, it->second, e);
        }
        for (const K3Partner& p : partners) {
            if (!ok)
                break;
            const TileState& o = asg.at(p.other);
            ok = p.c_is_plus ? k3_ok(rs, s, o, p.pair) : k3_ok(rs, o, s, p.pair);
        }
        if (ok)
            if (auto male = male_edge_abs(rs, s)) {
                Cell cur = neighbor(c, *male);
                for (std::size_t steps = 0; ok && steps <= asg.size(); ++steps) {
                    auto it = asg.find(cur);
                    if (it == asg.end())
                        break;
                    auto m = male_edge_abs(rs, it->second);
                    if (!m)
                        break;
                    cur = neighbor(cur, *m);
                    ok = cur != c;
                }
            }
        if (ok)
            out.push_back(s);
    }
    return out;
}

PropagationResult propagate(const Patch& patch)
{
    const StateTable table(patch.ruleset());
    Engine engine = make_engine(table, patch);
    PropagationResult out;
    out.contradiction = !engine.fixpoint();
    const auto& cells = engine.network().cells;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& list = out.domains[cells[i]];
        auto m = engine.domains()[i];
        while (m) {
            list.push_back(table.states()[static_cast<std::size_t>(std::countr_zero(m))]);
            m &= m - 1;
        }
    }
    return out;
}

SolveResult complete_patch(const Patch& patch, const SolverConfig& config)
{
    const auto t0 = Clock::now();
    const StateTable table(patch.ruleset());
    Engine engine = make_engine(table, patch);
    SolveResult out;
    out.outcome = engine.solve(config.seed, config.node_limit);
    if (out.outcome == Outcome::SAT) {
        out.patch = Patch(patch.region(), patch.ruleset_ptr());
        const auto asg = engine.assignment();
        const auto& cells = engine.network().cells;
        for (std::size_t i = 0; i < cells.size(); ++i)
            out.patch.assign(cells[i], table.states()[static_cast<std::size_t>(asg[i])]);
        if (!verify_patch(out.patch).empty())
            throw std::logic_error("solver produced an invalid patch");
    }
    out.stats = engine.stats();
    out.stats.wall_seconds = seconds_since(t0);
    return out;
}

SolveResult solve_region(const Region& region, const RuleSetPtr& ruleset, const SolverConfig& config)
{
    return complete_patch(Patch(region, ruleset), config);
}

std::uint64_t count_solutions(const Region& region, const RuleSet& ruleset)
{
    if (region.size() > kCountSolutionsMaxCells)
        throw std::invalid_argument("count_solutions supports at most " + std::to_string(kCountSolutionsMaxCells) +
                                    " cells, got " + std::to_string(region.size()));
    const StateTable table(ruleset);
    Engine engine(table, Network::for_region(region, table));
    return engine.count();
}

TorusSolveResult solve_torus(const TorusBasis& basis, const RuleSetPtr& ruleset, const SolverConfig& config)
{
    const auto t0 = Clock::now();
    const TorusQuotient torus(basis);
    const StateTable table(*ruleset);
    Engine engine(table, Network::for_torus(torus, table));
    TorusSolveResult out;
    out.basis = torus.basis();
    out.outcome = engine.solve(config.seed, config.node_limit);
    if (out.outcome == Outcome::SAT) {
        for (const int s : engine.assignment())
            out.assignment.push_back(table.states()[static_cast<std::size_t>(s)]);
        if (!verify_torus(out.basis, *ruleset, out.assignment).empty())
            throw std::logic_error("solver produced an invalid torus assignment");
    }
    out.stats = engine.stats();
    out.stats.wall_seconds = seconds_since(t0);
    return out;
}

std::vector<Violation> verify_torus(const TorusBasis& basis, const RuleSet& rs, const std::vector<TileState>& assignment)
{
    const TorusQuotient torus(basis);
    if (assignment.size() != torus.size())
        throw std::invalid_argument("torus assignment has " + std::to_string(assignment.size()) + " states, expected " +
                                    std::to_string(torus.size()));
    const auto classes = torus.classes();
    auto state = [&](const Cell& c) -> const TileState& {
        return assignment[static_cast<std::size_t>(torus.class_index(c))];
    };

    std::vector<Violation> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const Cell a = classes[i];
        for (int e = 0; e < 3; ++e) {
            const Cell b = neighbor(a, e);
            if (!k1_ok(rs, assignment[i], state(b), e))
                out.push_back({Clause::K1, {a, torus.reduce(b)}, k1_detail(rs, assignment[i], state(b), e)});
            const K3Pair pair = k3_pair(a, e);
            if (!k3_ok(rs, state(pair.plus), state(pair.minus), pair))
                out.push_back({Clause::K3,
                               {torus.reduce(pair.plus), torus.reduce(pair.minus)},
                               k3_detail(rs, state(pair.plus), state(pair.minus), pair)});
        }
    }

    std::map<Cell, Cell> next;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (auto male = male_edge_abs(rs, assignment[i]))
            next.emplace(classes[i], torus.reduce(neighbor(classes[i], *male)));
    for (auto& cycle : functional_cycles(next))
        out.push_back({Clause::Acyclicity, std::move(cycle), "male-edge cycle"});
    return out;
}

} // namespace hexmono
