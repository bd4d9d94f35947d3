#pragma once

// Rule-set search. A template is a rule-set document plus a "parameters"
// object mapping names to finite lists of values; every string value "$name"
// elsewhere in the document is replaced by the chosen value. Instantiations
// are enumerated like an odometer: parameters in document order, the last one
// varying fastest.

#include "hexmono/solver.hpp"
#include "hexmono/tilemodel.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hexmono {

struct SearchBudget {
    /// Instantiations examined before giving up.
    std::size_t max_instantiations = 100'000;
    /// Per solve; a LIMIT disqualifies the candidate.
    std::uint64_t node_limit = 200'000;
};

struct SearchFilter {
    int region_radius = 2;
    int max_torus_det = 4;
};

struct SearchCandidate {
    /// (parameter, value as compact JSON) in parameter order.
    std::vector<std::pair<std::string, std::string>> parameters;
    RuleSetPtr ruleset;
};

struct SearchResult {
    std::vector<SearchCandidate> survivors;
    std::size_t total = 0;
    std::size_t examined = 0;
    /// Instantiations rejected by rule-set validation.
    std::size_t invalid = 0;
    /// Budget ran out before every instantiation was examined.
    bool incomplete = false;
};

/// Throws RuleSetError for a malformed template.
SearchResult search_rulesets(const std::string& template_text, const SearchBudget& budget = {},
                             const SearchFilter& filter = {});

/// Radius-R region SAT and every torus with |det| <= D UNSAT.
bool passes_filter(const RuleSetPtr& ruleset, const SearchFilter& filter, std::uint64_t node_limit);

std::string emit_search_result(const SearchResult& result);

} // namespace hexmono
