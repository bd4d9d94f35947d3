#include "hexmono/dendrite.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

namespace hexmono {

namespace {

std::string cycle_message(const std::vector<Cell>& cycle)
{
    std::string s = "male-edge cycle:";
    for (const Cell& c : cycle)
        s += " " + to_string(c);
    return s;
}

} // namespace

std::size_t MotifGraph::in_degree(const Cell& c) const
{
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.second == c; }));
}

CycleError::CycleError(std::vector<Cell> cycle) : std::runtime_error(cycle_message(cycle)), cycle_(std::move(cycle)) {}

MotifGraph motif_graph(const Patch& patch)
{
    MotifGraph g;
    const RuleSet& rs = patch.ruleset();
    g.no_male_edges = !rs.has_male_edges();
    for (const auto& [c, s] : patch.assignment()) {
        g.nodes.push_back(c);
        const auto male = male_edge_abs(rs, s);
        if (!male)
            continue;
        const Cell t = neighbor(c, *male);
        if (patch.assigned(t))
            g.edges.emplace(c, t);
        else
            g.dangling.emplace_back(c, t);
    }
    return g;
}

// In a graph with out-degree <= 1 a weak component holds at most one cycle and
// it is directed, so an undirected union-find hit locates it.
std::optional<std::vector<Cell>> find_cycle(const MotifGraph& g)
{
    std::map<Cell, Cell> parent;
    for (const Cell& c : g.nodes)
        parent[c] = c;
    for (const auto& [a, b] : g.edges)
        parent.try_emplace(b, b);
    const std::function<Cell(Cell)> find = [&](Cell x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::optional<Cell> hit;
    for (const auto& [a, b] : g.edges) {
        const Cell ra = find(a), rb = find(b);
        if (ra == rb) {
            hit = a;
            break;
        }
        parent[ra] = rb;
    }
    if (!hit)
        return std::nullopt;

    // Walk forward from the hit until a cell repeats.
    std::vector<Cell> walk;
    std::set<Cell> seen;
    Cell cur = *hit;
    while (!seen.contains(cur)) {
        seen.insert(cur);
        walk.push_back(cur);
        cur = g.edges.at(cur);
    }
    std::vector<Cell> cycle(std::find(walk.begin(), walk.end(), cur), walk.end());
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    return cycle;
}

std::size_t component_count(const MotifGraph& g)
{
    std::map<Cell, Cell> parent;
    for (const Cell& c : g.nodes)
        parent[c] = c;
    const std::function<Cell(Cell)> find = [&](Cell x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t count = g.nodes.size();
    for (const auto& [a, b] : g.edges) {
        if (!parent.contains(b))
            continue;
        const Cell ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            --count;
        }
    }
    return count;
}

std::vector<Cell> placement_order(const Patch& patch)
{
    const MotifGraph g = motif_graph(patch);
    std::map<Cell, std::size_t> pending;
    for (const Cell& c : g.nodes)
        pending[c] = 0;
    for (const auto& [child, par] : g.edges)
        ++pending[par];

    std::priority_queue<Cell, std::vector<Cell>, std::greater<>> ready;
    for (const auto& [c, n] : pending)
        if (n == 0)
            ready.push(c);

    std::vector<Cell> order;
    order.reserve(g.nodes.size());
    while (!ready.empty()) {
        const Cell c = ready.top();
        ready.pop();
        order.push_back(c);
        const auto it = g.edges.find(c);
        if (it != g.edges.end() && --pending[it->second] == 0)
            ready.push(it->second);
    }
    if (order.size() != g.nodes.size())
        throw CycleError(*find_cycle(g));
    return order;
}

std::optional<OrderViolation> verify_order(const Patch& patch, const std::vector<Cell>& seq)
{
    std::map<Cell, std::size_t> index;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!patch.assigned(seq[i]))
            throw std::invalid_argument("order lists " + to_string(seq[i]) + ", which is not an assigned cell");
        if (!index.emplace(seq[i], i).second)
            throw std::invalid_argument("order lists " + to_string(seq[i]) + " twice");
    }
    if (seq.size() != patch.size())
        throw std::invalid_argument("order has " + std::to_string(seq.size()) + " cells, patch has " +
                                    std::to_string(patch.size()));

    const MotifGraph g = motif_graph(patch);
    std::optional<OrderViolation> first;
    for (const auto& [child, par] : g.edges) {
        const std::size_t ci = index.at(child), pi = index.at(par);
        if (pi < ci && (!first || ci < first->child_index))
            first = OrderViolation{child, par, ci, pi};
    }
    return first;
}

std::string order_listing(const Patch& patch, const std::vector<Cell>& seq)
{
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const TileState* s = patch.state_at(seq[i]);
        out += "step " + std::to_string(i + 1) + ": place tile at (" + std::to_string(seq[i].q) + "," +
               std::to_string(seq[i].r) + ") orientation " + std::to_string(s ? s->orientation : 0);
        if (s && (patch.ruleset().variants().size() > 1 || s->chirality != Chirality::R))
            out += " variant " + patch.ruleset().variants()[static_cast<std::size_t>(s->variant)] + " chirality " +
                   std::string(to_string(s->chirality));
        out += "\n";
    }
    return out;
}

} // namespace hexmono
