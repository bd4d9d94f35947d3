#pragma once

// Rule-set documents: one canonical JSON serialization with fields in the
// order name, variants, base_edge_labels, base_corner_labels, k1_compat,
// k3_compat, male_edge_offset, motif_strokes.

#include "hexmono/tilemodel.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hexmono {

/// Parses and validates a rule-set document. Throws RuleSetError whose path()
/// names the offending field.
RuleSet load_ruleset(const std::string& text);
RuleSet load_ruleset_file(const std::filesystem::path& path);

std::string emit_ruleset(const RuleSet& rs);

/// Stable 64-bit FNV-1a digest of the canonical document, as 16 hex digits.
std::string ruleset_hash(const RuleSet& rs);

/// Names of the rule sets compiled into the library ("hextoo6", "st12", "unmarked").
std::vector<std::string> shipped_ruleset_names();
/// Pinned document bytes of a shipped rule set; empty if unknown.
std::string_view shipped_ruleset_text(std::string_view name);
/// Throws std::invalid_argument for unknown names.
RuleSetPtr shipped_ruleset(std::string_view name);

/// Shipped name, or a path to a rule-set document.
RuleSetPtr resolve_ruleset(const std::string& name_or_path);

} // namespace hexmono
