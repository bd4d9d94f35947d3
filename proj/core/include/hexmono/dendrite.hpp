#pragma once

// Joint graph of a patch: every assigned cell points at the neighbor across
// its male edge. Read backwards it is the dependency graph of the tiler: the
// tab owner (child) has to be laid before the tile covering it (parent).

#include "hexmono/hexgrid.hpp"
#include "hexmono/patch.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexmono {

struct MotifGraph {
    /// Assigned cells, sorted by (q, r).
    std::vector<Cell> nodes;
    /// Internal edges child -> parent.
    std::map<Cell, Cell> edges;
    /// Male edges whose target is not an assigned cell: (owner, target).
    std::vector<std::pair<Cell, Cell>> dangling;
    /// Set when the rule set declares no male edges at all.
    bool no_male_edges = false;

    std::size_t in_degree(const Cell& c) const;
};

MotifGraph motif_graph(const Patch& patch);

/// A directed cycle starting at its smallest cell, or nullopt.
std::optional<std::vector<Cell>> find_cycle(const MotifGraph& g);

/// Number of weakly connected components.
std::size_t component_count(const MotifGraph& g);

class CycleError : public std::runtime_error {
public:
    explicit CycleError(std::vector<Cell> cycle);
    const std::vector<Cell>& cycle() const { return cycle_; }

private:
    std::vector<Cell> cycle_;
};

/// Children before parents, ready cells taken in (q, r) order. Throws CycleError.
std::vector<Cell> placement_order(const Patch& patch);

struct OrderViolation {
    Cell child;
    Cell parent;
    std::size_t child_index = 0;
    std::size_t parent_index = 0;

    friend bool operator==(const OrderViolation&, const OrderViolation&) = default;
};

/// First dependency edge (in child order) whose parent precedes its child.
/// Throws std::invalid_argument unless seq is a permutation of the assigned cells.
std::optional<OrderViolation> verify_order(const Patch& patch, const std::vector<Cell>& seq);

/// "step N: place tile at (q,r) orientation o" lines.
std::string order_listing(const Patch& patch, const std::vector<Cell>& seq);

} // namespace hexmono
