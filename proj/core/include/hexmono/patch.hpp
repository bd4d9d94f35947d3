#pragma once

#include "hexmono/hexgrid.hpp"
#include "hexmono/tilemodel.hpp"

#include <map>
#include <string>

namespace hexmono {

/// Partial assignment of tile states to the cells of a region under one rule set.
class Patch {
public:
    Patch() = default;
    Patch(Region region, RuleSetPtr ruleset) : region_(std::move(region)), ruleset_(std::move(ruleset)) {}

    const Region& region() const { return region_; }
    const RuleSet& ruleset() const { return *ruleset_; }
    const RuleSetPtr& ruleset_ptr() const { return ruleset_; }
    const std::map<Cell, TileState>& assignment() const { return assignment_; }

    std::size_t size() const { return assignment_.size(); }
    bool empty() const { return assignment_.empty(); }
    bool complete() const { return assignment_.size() == region_.size(); }

    bool assigned(const Cell& c) const { return assignment_.contains(c); }
    const TileState* state_at(const Cell& c) const;

    /// Throws std::invalid_argument for cells outside the region or states the
    /// rule set does not declare. Overwrites an existing assignment.
    void assign(const Cell& c, const TileState& s);
    void unassign(const Cell& c) { assignment_.erase(c); }

    friend bool operator==(const Patch& a, const Patch& b)
    {
        return a.region_ == b.region_ && a.assignment_ == b.assignment_ &&
               (a.ruleset_ == b.ruleset_ || (a.ruleset_ && b.ruleset_ && *a.ruleset_ == *b.ruleset_));
    }

private:
    Region region_;
    RuleSetPtr ruleset_;
    std::map<Cell, TileState> assignment_;
};

/// Patch document: rule-set name and hash, region descriptor and the
/// assignment sorted by (q, r).
std::string emit_patch(const Patch& patch);

class PatchParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Uses `ruleset` when given, otherwise resolves the document's rule-set name
/// among the shipped sets; the hash must match either way. Throws
/// PatchParseError naming the offending field.
Patch parse_patch(const std::string& text, const RuleSetPtr& ruleset = nullptr);

} // namespace hexmono
