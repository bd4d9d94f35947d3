#pragma once

// Constraint engine over patches and torus quotients.
//
// Clauses:
//   K1          every shared edge between two assigned cells
//   K3          every lattice edge (A, B) with A, B, C+, C- all in the region,
//               once C+ and C- are assigned
//   acyclicity  the directed graph cell -> neighbor(cell, male edge), restricted
//               to assigned targets, has no directed cycle

#include "hexmono/hexgrid.hpp"
#include "hexmono/patch.hpp"
#include "hexmono/tilemodel.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hexmono {

enum class Clause { K1, K3, Acyclicity };

std::string_view to_string(Clause c);

struct Violation {
    Clause clause;
    std::vector<Cell> cells;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty iff the patch satisfies every clause among its assigned cells.
/// Cycles are reported once each, starting at their smallest cell.
std::vector<Violation> verify_patch(const Patch& patch);

/// States s for which assigning c := s leaves the patch violation-free.
/// Throws std::invalid_argument if c is outside the region or already assigned.
std::vector<TileState> legal_states(const Patch& patch, const Cell& c);

struct PropagationResult {
    bool contradiction = false;
    /// Remaining candidates for every region cell (assigned cells keep their state).
    std::map<Cell, std::vector<TileState>> domains;
};

/// Arc-consistency fixpoint over K1 and K3 plus male-edge cycle pruning.
PropagationResult propagate(const Patch& patch);

struct SolverConfig {
    std::uint64_t seed = 1;
    std::uint64_t node_limit = 5'000'000;
};

enum class Outcome { SAT, UNSAT, LIMIT };

std::string_view to_string(Outcome o);

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t propagations = 0;
    double wall_seconds = 0.0;
};

struct SolveResult {
    Outcome outcome = Outcome::LIMIT;
    /// Complete and valid when outcome is SAT, otherwise empty.
    Patch patch;
    SolveStats stats;
};

/// Backtracking search with most-constrained-cell selection (ties broken by
/// (q, r)) and a seeded shuffle of each cell's values. Deterministic per config.
SolveResult solve_region(const Region& region, const RuleSetPtr& ruleset, const SolverConfig& config = {});

/// Extends an existing partial patch. UNSAT means no completion exists.
SolveResult complete_patch(const Patch& patch, const SolverConfig& config = {});

inline constexpr std::size_t kCountSolutionsMaxCells = 9;

/// Exact number of complete valid assignments. Throws std::invalid_argument for
/// regions larger than kCountSolutionsMaxCells.
std::uint64_t count_solutions(const Region& region, const RuleSet& ruleset);

struct TorusSolveResult {
    TorusBasis basis; // Hermite form
    Outcome outcome = Outcome::LIMIT;
    /// One state per class representative (TorusQuotient::classes order) when SAT.
    std::vector<TileState> assignment;
    SolveStats stats;
};

/// Exhaustive search over the |det| cell classes; UNSAT is a proof that no
/// periodic tiling with this period lattice exists. Throws DegenerateBasis.
TorusSolveResult solve_torus(const TorusBasis& basis, const RuleSetPtr& ruleset, const SolverConfig& config = {});

/// Clause check for a torus assignment, used to certify SAT results.
std::vector<Violation> verify_torus(const TorusBasis& basis, const RuleSet& ruleset,
                                    const std::vector<TileState>& assignment);

} // namespace hexmono
