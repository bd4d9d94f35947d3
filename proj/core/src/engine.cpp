#include "internal/engine.hpp"

#include <algorithm>
#include <bit>

namespace hexmono::detail {

namespace {

Mask bit(int s) { return Mask{1} << s; }

template <typename F>
void for_each_bit(Mask m, F&& f)
{
    while (m) {
        const int s = std::countr_zero(m);
        m &= m - 1;
        f(s);
    }
}

} // namespace

Network Network::for_region(const Region& region, const StateTable& table)
{
    Network net;
    net.cells.assign(region.cells().begin(), region.cells().end());
    net.nbr.resize(net.cells.size());
    for (std::size_t i = 0; i < net.cells.size(); ++i)
        for (int e = 0; e < 6; ++e)
            net.nbr[i][e] = region.index_of(neighbor(net.cells[i], e));

    net.arcs.resize(net.cells.size());
    for (std::size_t i = 0; i < net.cells.size(); ++i)
        for (int e = 0; e < 3; ++e) {
            if (net.nbr[i][e] < 0)
                continue;
            const K3Pair pair = k3_pair(net.cells[i], e);
            const int plus = region.index_of(pair.plus);
            const int minus = region.index_of(pair.minus);
            if (plus < 0 || minus < 0)
                continue;
            net.arcs[plus].push_back({minus, e, Arc::Kind::K3Plus});
            net.arcs[minus].push_back({plus, e, Arc::Kind::K3Minus});
        }
    net.finish(table);
    return net;
}

Network Network::for_torus(const TorusQuotient& torus, const StateTable& table)
{
    Network net;
    net.cells.assign(torus.classes().begin(), torus.classes().end());
    const int n = static_cast<int>(net.cells.size());
    net.nbr.resize(net.cells.size());
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 6; ++e)
            net.nbr[i][e] = torus.class_index(neighbor(net.cells[i], e));

    net.arcs.resize(net.cells.size());
    net.unary.assign(net.cells.size(), table.full());
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 3; ++e) {
            const K3Pair pair = k3_pair(net.cells[i], e);
            const int plus = torus.class_index(pair.plus);
            const int minus = torus.class_index(pair.minus);
            if (plus == minus) {
                Mask ok = 0;
                for (int s = 0; s < table.size(); ++s)
                    if (table.k3_minus_allowed(s, e) & bit(s))
                        ok |= bit(s);
                net.unary[plus] &= ok;
                continue;
            }
            net.arcs[plus].push_back({minus, e, Arc::Kind::K3Plus});
            net.arcs[minus].push_back({plus, e, Arc::Kind::K3Minus});
        }
    net.finish(table);
    return net;
}

void Network::finish(const StateTable& table)
{
    if (unary.empty())
        unary.assign(cells.size(), table.full());
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (int e = 0; e < 6; ++e) {
            const int j = nbr[i][e];
            if (j < 0)
                continue;
            if (j == static_cast<int>(i)) {
                Mask ok = 0;
                for (int s = 0; s < table.size(); ++s)
                    if (table.k1_allowed(s, e) & bit(s))
                        ok |= bit(s);
                unary[i] &= ok;
                continue;
            }
            arcs[i].push_back({j, e, Arc::Kind::K1});
        }
}

JointForest::JointForest(int n)
    : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1), top_(static_cast<std::size_t>(n))
{
    for (int i = 0; i < n; ++i) {
        parent_[static_cast<std::size_t>(i)] = i;
        top_[static_cast<std::size_t>(i)] = i;
    }
}

int JointForest::find(int x) const
{
    while (parent_[static_cast<std::size_t>(x)] != x)
        x = parent_[static_cast<std::size_t>(x)];
    return x;
}

void JointForest::link(int child, int parent)
{
    int a = find(child);
    int b = find(parent);
    const int new_top = top_[static_cast<std::size_t>(b)];
    if (size_[static_cast<std::size_t>(a)] > size_[static_cast<std::size_t>(b)])
        std::swap(a, b);
    // a is absorbed into b
    trail_.push_back({a, b, top_[static_cast<std::size_t>(b)]});
    parent_[static_cast<std::size_t>(a)] = b;
    size_[static_cast<std::size_t>(b)] += size_[static_cast<std::size_t>(a)];
    top_[static_cast<std::size_t>(b)] = new_top;
}

void JointForest::undo_to(std::size_t mark)
{
    while (trail_.size() > mark) {
        const Entry e = trail_.back();
        trail_.pop_back();
        parent_[static_cast<std::size_t>(e.absorbed)] = e.absorbed;
        size_[static_cast<std::size_t>(e.into)] -= size_[static_cast<std::size_t>(e.absorbed)];
        top_[static_cast<std::size_t>(e.into)] = e.old_top;
    }
}

Engine::Engine(const StateTable& table, Network network)
    : table_(table), net_(std::move(network)), dom_(net_.unary), committed_(net_.cells.size(), 0),
      queued_(net_.cells.size(), 0), forest_(net_.size())
{
    for (int i = 0; i < net_.size(); ++i) {
        queue_.push_back(i);
        queued_[static_cast<std::size_t>(i)] = 1;
    }
    bool changed = false;
    for (int i = 0; i < net_.size(); ++i)
        prune_root(i, changed);
}

void Engine::fix(int i, int state)
{
    dom_[static_cast<std::size_t>(i)] &= bit(state);
    if (!queued_[static_cast<std::size_t>(i)]) {
        queue_.push_back(i);
        queued_[static_cast<std::size_t>(i)] = 1;
    }
}

bool Engine::revise_all()
{
    std::size_t head = 0;
    bool ok = true;
    while (head < queue_.size()) {
        const int i = queue_[head++];
        queued_[static_cast<std::size_t>(i)] = 0;
        const Mask di = dom_[static_cast<std::size_t>(i)];
        if (di == 0) {
            ok = false;
            break;
        }
        for (const Arc& arc : net_.arcs[static_cast<std::size_t>(i)]) {
            Mask support = 0;
            switch (arc.kind) {
            case Arc::Kind::K1:
                for_each_bit(di, [&](int s) { support |= table_.k1_allowed(s, arc.e); });
                break;
            case Arc::Kind::K3Plus:
                for_each_bit(di, [&](int s) { support |= table_.k3_minus_allowed(s, arc.e); });
                break;
            case Arc::Kind::K3Minus:
                for_each_bit(di, [&](int s) { support |= table_.k3_plus_allowed(s, arc.e); });
                break;
            }
            ++stats_.propagations;
            Mask& dt = dom_[static_cast<std::size_t>(arc.target)];
            const Mask nd = dt & support;
            if (nd != dt) {
                dt = nd;
                if (nd == 0) {
                    ok = false;
                    break;
                }
                if (!queued_[static_cast<std::size_t>(arc.target)]) {
                    queue_.push_back(arc.target);
                    queued_[static_cast<std::size_t>(arc.target)] = 1;
                }
            }
        }
        if (!ok)
            break;
    }
    if (!ok)
        for (std::size_t k = head; k < queue_.size(); ++k)
            queued_[static_cast<std::size_t>(queue_[k])] = 0;
    queue_.clear();
    return ok;
}

bool Engine::prune_root(int r, bool& changed)
{
    Mask forbid = 0;
    for (int e = 0; e < 6; ++e) {
        const int k = net_.nbr[static_cast<std::size_t>(r)][e];
        if (k >= 0 && (k == r || forest_.tree_root(k) == r))
            forbid |= table_.male_along(e);
    }
    Mask& d = dom_[static_cast<std::size_t>(r)];
    if ((d & forbid) == 0)
        return true;
    d &= ~forbid;
    changed = true;
    if (!queued_[static_cast<std::size_t>(r)]) {
        queue_.push_back(r);
        queued_[static_cast<std::size_t>(r)] = 1;
    }
    return d != 0;
}

bool Engine::commit_singletons(bool& changed)
{
    for (int i = 0; i < net_.size(); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (committed_[ui] || std::popcount(dom_[ui]) != 1)
            continue;
        committed_[ui] = 1;
        const int male = table_.male(std::countr_zero(dom_[ui]));
        if (male < 0)
            continue;
        const int j = net_.nbr[ui][male];
        if (j < 0)
            continue;
        if (j == i || forest_.tree_root(j) == i)
            return false;
        forest_.link(i, j);
        const int r = forest_.tree_root(j);
        if (!committed_[static_cast<std::size_t>(r)] && !prune_root(r, changed))
            return false;
    }
    return true;
}

// Cells that can only point at each other must eventually close a cycle.
bool Engine::trapped()
{
    const int n = net_.size();
    std::vector<char> in_x(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> dirs(static_cast<std::size_t>(n), 0);
    std::vector<int> work;
    for (int i = 0; i < n; ++i) {
        const Mask d = dom_[static_cast<std::size_t>(i)];
        if (d & table_.no_male())
            continue;
        std::uint8_t used = 0;
        bool escapes = false;
        for (int e = 0; e < 6; ++e)
            if (d & table_.male_along(e)) {
                used |= static_cast<std::uint8_t>(1u << e);
                escapes = escapes || net_.nbr[static_cast<std::size_t>(i)][e] < 0;
            }
        if (escapes)
            continue;
        dirs[static_cast<std::size_t>(i)] = used;
        in_x[static_cast<std::size_t>(i)] = 1;
        work.push_back(i);
    }
    while (!work.empty()) {
        const int i = work.back();
        work.pop_back();
        const auto ui = static_cast<std::size_t>(i);
        if (!in_x[ui])
            continue;
        bool ok = true;
        for (int e = 0; e < 6 && ok; ++e)
            if (dirs[ui] & (1u << e))
                ok = in_x[static_cast<std::size_t>(net_.nbr[ui][e])] != 0;
        if (ok)
            continue;
        in_x[ui] = 0;
        for (int e = 0; e < 6; ++e) {
            const int k = net_.nbr[ui][e];
            if (k >= 0 && in_x[static_cast<std::size_t>(k)])
                work.push_back(k);
        }
    }
    return std::any_of(in_x.begin(), in_x.end(), [](char c) { return c != 0; });
}

bool Engine::fixpoint()
{
    for (;;) {
        if (!revise_all())
            return false;
        bool changed = false;
        if (!commit_singletons(changed)) {
            for (int i : queue_)
                queued_[static_cast<std::size_t>(i)] = 0;
            queue_.clear();
            return false;
        }
        if (!changed)
            break;
    }
    return !trapped();
}

int Engine::choose() const
{
    int best = -1;
    int best_count = 65;
    for (int i = 0; i < net_.size(); ++i) {
        const int c = std::popcount(dom_[static_cast<std::size_t>(i)]);
        if (c > 1 && c < best_count) {
            best = i;
            best_count = c;
        }
    }
    return best;
}

Engine::Snapshot Engine::save() const { return {dom_, committed_, forest_.mark()}; }

void Engine::restore(const Snapshot& s)
{
    dom_ = s.dom;
    committed_ = s.committed;
    forest_.undo_to(s.forest_mark);
}

bool Engine::search(std::mt19937_64& rng, std::uint64_t node_limit, bool& limited)
{
    const int i = choose();
    if (i < 0)
        return true;
    std::vector<int> values;
    for_each_bit(dom_[static_cast<std::size_t>(i)], [&](int s) { values.push_back(s); });
    for (std::size_t k = values.size(); k > 1; --k)
        std::swap(values[k - 1], values[static_cast<std::size_t>(rng() % k)]);

    for (const int s : values) {
        if (stats_.nodes >= node_limit) {
            limited = true;
            return false;
        }
        ++stats_.nodes;
        const Snapshot snap = save();
        fix(i, s);
        if (fixpoint() && search(rng, node_limit, limited))
            return true;
        if (limited)
            return false;
        restore(snap);
    }
    return false;
}

Outcome Engine::solve(std::uint64_t seed, std::uint64_t node_limit)
{
    if (!fixpoint())
        return Outcome::UNSAT;
    std::mt19937_64 rng(seed);
    bool limited = false;
    if (search(rng, node_limit, limited))
        return Outcome::SAT;
    return limited ? Outcome::LIMIT : Outcome::UNSAT;
}

std::uint64_t Engine::count_rec()
{
    const int i = choose();
    if (i < 0)
        return 1;
    std::uint64_t total = 0;
    const Mask d = dom_[static_cast<std::size_t>(i)];
    for_each_bit(d, [&](int s) {
        ++stats_.nodes;
        const Snapshot snap = save();
        fix(i, s);
        if (fixpoint())
            total += count_rec();
        restore(snap);
    });
    return total;
}

std::uint64_t Engine::count()
{
    if (!fixpoint())
        return 0;
    return count_rec();
}

std::vector<int> Engine::assignment() const
{
    std::vector<int> out;
    out.reserve(dom_.size());
    for (const Mask d : dom_)
        out.push_back(std::popcount(d) == 1 ? std::countr_zero(d) : -1);
    return out;
}

} // namespace hexmono::detail
