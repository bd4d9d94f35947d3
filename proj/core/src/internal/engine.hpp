#pragma once

// Search state shared by propagate, solve_region, count_solutions and
// solve_torus. Domains are bitmasks over StateTable indices.

#include "hexmono/hexgrid.hpp"
#include "hexmono/solver.hpp"
#include "hexmono/tilemodel.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hexmono::detail {

using Mask = StateTable::Mask;

struct Arc {
    enum class Kind : std::uint8_t { K1, K3Plus, K3Minus };
    int target;
    int e;
    Kind kind;
};

/// Cells plus adjacency; cells outside the region are -1.
struct Network {
    std::vector<Cell> cells;
    std::vector<std::array<int, 6>> nbr;
    std::vector<std::vector<Arc>> arcs;
    // unary restrictions from self-identified edges on a torus
    std::vector<Mask> unary;

    static Network for_region(const Region& region, const StateTable& table);
    static Network for_torus(const TorusQuotient& torus, const StateTable& table);

    int size() const { return static_cast<int>(cells.size()); }

private:
    void finish(const StateTable& table);
};

/// Directed forest of committed male edges with undo, used for incremental
/// cycle detection. tree_root(x) is the cell at the top of x's tree.
class JointForest {
public:
    explicit JointForest(int n);

    int tree_root(int x) const { return top_[static_cast<std::size_t>(find(x))]; }
    /// Adds child -> parent; child must be the top of its own tree.
    void link(int child, int parent);
    std::size_t mark() const { return trail_.size(); }
    void undo_to(std::size_t mark);

private:
    int find(int x) const;

    struct Entry {
        int absorbed;
        int into;
        int old_top;
    };
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> top_;
    std::vector<Entry> trail_;
};

class Engine {
public:
    Engine(const StateTable& table, Network network);

    /// Restricts cell i to one state (no propagation yet).
    void fix(int i, int state);
    /// Runs the fixpoint; false on contradiction.
    bool fixpoint();

    /// First solution (seeded value order) into assignment(); outcome SAT/UNSAT/LIMIT.
    Outcome solve(std::uint64_t seed, std::uint64_t node_limit);
    /// Number of solutions reachable from the current state.
    std::uint64_t count();

    const std::vector<Mask>& domains() const { return dom_; }
    std::vector<int> assignment() const;
    const Network& network() const { return net_; }
    SolveStats& stats() { return stats_; }

private:
    struct Snapshot {
        std::vector<Mask> dom;
        std::vector<char> committed;
        std::size_t forest_mark;
    };

    bool revise_all();
    bool commit_singletons(bool& changed);
    bool prune_root(int r, bool& changed);
    bool trapped();
    int choose() const;
    bool search(std::mt19937_64& rng, std::uint64_t node_limit, bool& limited);
    std::uint64_t count_rec();
    Snapshot save() const;
    void restore(const Snapshot& s);

    const StateTable& table_;
    Network net_;
    std::vector<Mask> dom_;
    std::vector<char> committed_;
    std::vector<int> queue_;
    std::vector<char> queued_;
    JointForest forest_;
    SolveStats stats_;
};

} // namespace hexmono::detail
