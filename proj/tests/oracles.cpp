#include "oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace oracle {

using hexmono::RuleSet;
using hexmono::TileState;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt3 = std::sqrt(3.0);

Cell cell_at(const Point& p)
{
    const double r = p.y / (kSqrt3 / 2);
    const double q = p.x - r / 2;
    return {static_cast<int>(std::lround(q)), static_cast<int>(std::lround(r))};
}

// Unit step from a toward the cell at angle 60 e degrees.
Cell step(const Cell& a, int e)
{
    const Point c = center(a);
    const double t = kPi / 3 * e;
    return cell_at({c.x + std::cos(t), c.y + std::sin(t)});
}

// Edge index of b seen from a, from the angle between centers.
int edge_toward(const Cell& a, const Cell& b)
{
    const Point pa = center(a);
    const Point pb = center(b);
    const double dx = pb.x - pa.x;
    const double dy = pb.y - pa.y;
    if (std::abs(std::hypot(dx, dy) - 1.0) > 1e-9)
        return -1;
    const double deg = std::atan2(dy, dx) * 180 / kPi;
    return static_cast<int>(std::lround(deg / 60 + 6)) % 6;
}

int label(const RuleSet& rs, const std::string& s) { return rs.label_id(s); }

struct Clause {
    enum Kind { K1, K3 } kind;
    int a, b;   // cell positions
    int ea, eb; // edge or corner indices
};

bool clause_ok(const Clause& c, const std::vector<TileState>& st, const RuleSet& rs)
{
    const TileState& x = st[static_cast<std::size_t>(c.a)];
    const TileState& y = st[static_cast<std::size_t>(c.b)];
    if (c.kind == Clause::K1)
        return rs.k1(label(rs, hexmono::edge_label(rs, x, c.ea)), label(rs, hexmono::edge_label(rs, y, c.eb)));
    return rs.k3(label(rs, hexmono::corner_label(rs, x, c.ea)), label(rs, hexmono::corner_label(rs, y, c.eb)));
}

// K1 and K3 clauses among `cells`, with index(class) given by `index_of`.
// Every ordered (A, e) is listed, so each lattice edge appears twice.
template <class IndexOf>
std::vector<Clause> clauses(const std::vector<Cell>& cells, IndexOf index_of)
{
    std::vector<Clause> out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell a = cells[i];
        for (int e = 0; e < 6; ++e) {
            const Cell b = step(a, e);
            const int j = index_of(b);
            if (j < 0)
                continue;
            out.push_back({Clause::K1, static_cast<int>(i), j, e, edge_toward(b, a)});
            const EdgeEnds ends = edge_ends(a, b);
            const int p = index_of(ends.third[0]);
            const int m = index_of(ends.third[1]);
            if (p >= 0 && m >= 0)
                out.push_back({Clause::K3, p, m, ends.corner[0], ends.corner[1]});
        }
    }
    return out;
}

} // namespace

Point center(const Cell& c) { return {c.q + c.r / 2.0, c.r * kSqrt3 / 2}; }

Point corner_point(const Cell& c, int k)
{
    const Point p = center(c);
    const double rad = 1 / kSqrt3;
    const double t = kPi / 6 + kPi / 3 * k;
    return {p.x + rad * std::cos(t), p.y + rad * std::sin(t)};
}

bool same_point(const Point& a, const Point& b) { return std::abs(a.x - b.x) < 1e-9 && std::abs(a.y - b.y) < 1e-9; }

std::vector<Cell> cells_at_corner(const Cell& a, int k)
{
    const Point v = corner_point(a, k);
    std::vector<Cell> out;
    for (int dq = -2; dq <= 2; ++dq)
        for (int dr = -2; dr <= 2; ++dr) {
            const Cell c{a.q + dq, a.r + dr};
            for (int j = 0; j < 6; ++j)
                if (same_point(corner_point(c, j), v))
                    out.push_back(c);
        }
    return out;
}

EdgeEnds edge_ends(const Cell& a, const Cell& b)
{
    EdgeEnds ends{};
    int found = 0;
    for (int ka = 0; ka < 6; ++ka) {
        const Point v = corner_point(a, ka);
        bool shared = false;
        for (int kb = 0; kb < 6; ++kb)
            shared = shared || same_point(corner_point(b, kb), v);
        if (!shared)
            continue;
        for (const Cell& c : cells_at_corner(a, ka)) {
            if (c == a || c == b)
                continue;
            for (int j = 0; j < 6; ++j)
                if (same_point(corner_point(c, j), v)) {
                    // order: the vertex counter-clockwise of the edge first
                    ends.third[found] = c;
                    ends.corner[found] = j;
                }
        }
        ++found;
    }
    if (found != 2)
        throw std::logic_error("cells are not adjacent");
    // third[0] should sit counter-clockwise of the edge direction a -> b
    const Point pa = center(a);
    const Point pb = center(b);
    const Point p0 = center(ends.third[0]);
    const double cross = (pb.x - pa.x) * (p0.y - pa.y) - (pb.y - pa.y) * (p0.x - pa.x);
    if (cross < 0) {
        std::swap(ends.third[0], ends.third[1]);
        std::swap(ends.corner[0], ends.corner[1]);
    }
    return ends;
}

std::uint64_t brute_count(const std::vector<Cell>& cells, const RuleSet& rs)
{
    const auto states = hexmono::enumerate_states(rs);
    auto index_of = [&](const Cell& c) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i] == c)
                return static_cast<int>(i);
        return -1;
    };
    // clause is checked when its later cell is assigned
    std::vector<std::vector<Clause>> at(cells.size());
    for (const Clause& c : clauses(cells, index_of))
        at[static_cast<std::size_t>(std::max(c.a, c.b))].push_back(c);

    std::vector<int> male_target(cells.size() * states.size(), -1);
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t s = 0; s < states.size(); ++s)
            if (auto m = hexmono::male_edge_abs(rs, states[s]))
                male_target[i * states.size() + s] = index_of(step(cells[i], *m));

    std::vector<TileState> assign(cells.size());
    std::vector<int> chosen(cells.size(), -1);
    std::uint64_t count = 0;

    auto cycle_through = [&](std::size_t i) {
        std::size_t cur = i;
        for (std::size_t steps = 0; steps <= cells.size(); ++steps) {
            if (chosen[cur] < 0)
                return false;
            const int nxt = male_target[cur * states.size() + static_cast<std::size_t>(chosen[cur])];
            if (nxt < 0 || chosen[static_cast<std::size_t>(nxt)] < 0)
                return false;
            if (static_cast<std::size_t>(nxt) == i)
                return true;
            cur = static_cast<std::size_t>(nxt);
        }
        return false;
    };

    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == cells.size()) {
            ++count;
            return;
        }
        for (std::size_t s = 0; s < states.size(); ++s) {
            assign[i] = states[s];
            chosen[i] = static_cast<int>(s);
            bool ok = true;
            for (const Clause& c : at[i])
                if (!clause_ok(c, assign, rs)) {
                    ok = false;
                    break;
                }
            if (ok && !cycle_through(i)) {
                // a cycle through an earlier cell would have been caught when its last cell was set
                self(self, i + 1);
            }
            chosen[i] = -1;
        }
    };
    rec(rec, 0);
    return count;
}

bool assignment_ok(const std::vector<Cell>& cells, const std::vector<TileState>& states, const RuleSet& rs)
{
    auto index_of = [&](const Cell& c) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i] == c)
                return static_cast<int>(i);
        return -1;
    };
    for (const Clause& c : clauses(cells, index_of))
        if (!clause_ok(c, states, rs))
            return false;
    // walk every male chain; a chain longer than the cell count has looped
    for (std::size_t i = 0; i < cells.size(); ++i) {
        int cur = static_cast<int>(i);
        for (std::size_t k = 0; k <= cells.size(); ++k) {
            const auto m = hexmono::male_edge_abs(rs, states[static_cast<std::size_t>(cur)]);
            if (!m)
                break;
            cur = index_of(step(cells[static_cast<std::size_t>(cur)], *m));
            if (cur < 0)
                break;
            if (k == cells.size())
                return false;
        }
    }
    return true;
}

bool in_lattice(const Cell& d, const hexmono::TorusBasis& b)
{
    const long long det = b.det();
    if (det == 0)
        throw std::invalid_argument("degenerate");
    const long long x = static_cast<long long>(d.q) * b.v.r - static_cast<long long>(d.r) * b.v.q;
    const long long y = static_cast<long long>(b.u.q) * d.r - static_cast<long long>(b.u.r) * d.q;
    return x % det == 0 && y % det == 0;
}

std::vector<Cell> torus_classes(const hexmono::TorusBasis& basis)
{
    const int n = static_cast<int>(std::llabs(basis.det()));
    std::vector<Cell> reps;
    for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r) {
            const Cell c{q, r};
            bool seen = false;
            for (const Cell& x : reps)
                if (in_lattice(c - x, basis)) {
                    seen = true;
                    break;
                }
            if (!seen)
                reps.push_back(c);
        }
    return reps;
}

bool brute_torus_sat(const hexmono::TorusBasis& basis, const RuleSet& rs)
{
    const std::vector<Cell> reps = torus_classes(basis);
    auto index_of = [&](const Cell& c) {
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (in_lattice(c - reps[i], basis))
                return static_cast<int>(i);
        return -1;
    };
    const std::vector<Clause> all = clauses(reps, index_of);
    const auto states = hexmono::enumerate_states(rs);
    const std::size_t n = reps.size();

    std::vector<std::size_t> digit(n, 0);
    std::vector<TileState> assign(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            assign[i] = states[digit[i]];
        bool ok = true;
        for (const Clause& c : all)
            if (!clause_ok(c, assign, rs)) {
                ok = false;
                break;
            }
        if (ok) {
            // functional graph over classes: any directed cycle fails
            std::vector<int> next(n, -1);
            for (std::size_t i = 0; i < n; ++i)
                if (auto m = hexmono::male_edge_abs(rs, assign[i]))
                    next[i] = index_of(step(reps[i], *m));
            for (std::size_t i = 0; i < n && ok; ++i) {
                int cur = static_cast<int>(i);
                for (std::size_t k = 0; k < n && cur >= 0; ++k) {
                    cur = next[static_cast<std::size_t>(cur)];
                    if (cur == static_cast<int>(i))
                        ok = false;
                }
            }
        }
        if (ok)
            return true;
        std::size_t i = n;
        while (i-- > 0) {
            if (++digit[i] < states.size())
                break;
            digit[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1))
            return false;
    }
}

bool undirected_cycle(int n, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& [a, b] : edges) {
        const int ra = find(a);
        const int rb = find(b);
        if (ra == rb)
            return true;
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    return false;
}

bool directed_cycle(int n, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
    for (const auto& [a, b] : edges) {
        out[static_cast<std::size_t>(a)].push_back(b);
        ++indeg[static_cast<std::size_t>(b)];
    }
    std::vector<int> ready;
    for (int i = 0; i < n; ++i)
        if (indeg[static_cast<std::size_t>(i)] == 0)
            ready.push_back(i);
    int removed = 0;
    while (!ready.empty()) {
        const int x = ready.back();
        ready.pop_back();
        ++removed;
        for (int y : out[static_cast<std::size_t>(x)])
            if (--indeg[static_cast<std::size_t>(y)] == 0)
                ready.push_back(y);
    }
    return removed != n;
}

} // namespace oracle
