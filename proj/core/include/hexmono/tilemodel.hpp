#pragma once

// Data-driven description of a decorated hexagonal monotile.
//
// A rule set declares, for every (variant, chirality) face it uses, six edge
// labels, six corner labels, an optional male-joint edge and a list of motif
// strokes. Rotating a tile by o steps moves the decoration of base index i to
// absolute index (i + o) mod 6. Labels only mean something through the two
// compatibility relations:
//
//   k1  adjacent tiles A, B = neighbor(A, e): k1(edge(A, e), edge(B, e + 3))
//   k3  the two third tiles at the ends of the lattice edge (A, e):
//       C+ = neighbor(A, e + 1) at corner e + 4 and
//       C- = neighbor(A, e + 5) at corner e + 1:  k3(corner(C+), corner(C-))
//
// Both relations must be symmetric.

#include "hexmono/hexgrid.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hexmono {

/// The two third tiles at the ends of the lattice edge between a and
/// neighbor(a, e), with the corner of each that touches the edge.
struct K3Pair {
    Cell plus;
    int plus_corner;
    Cell minus;
    int minus_corner;
};

constexpr K3Pair k3_pair(const Cell& a, int e)
{
    return {neighbor(a, e + 1), wrap6(e + 4), neighbor(a, e + 5), wrap6(e + 1)};
}

enum class Chirality : std::uint8_t { R = 0, F = 1 };

std::string_view to_string(Chirality c);
std::optional<Chirality> parse_chirality(std::string_view s);

struct TileState {
    int variant = 0;
    int orientation = 0;
    Chirality chirality = Chirality::R;

    friend constexpr bool operator==(const TileState&, const TileState&) = default;
    friend constexpr auto operator<=>(const TileState&, const TileState&) = default;
};

/// Same state turned k further steps counter-clockwise.
constexpr TileState rotate_state(TileState s, int k)
{
    s.orientation = wrap6(s.orientation + k);
    return s;
}

/// Stroke anchors: 0..5 are edge midpoints, kCenter is the cell center.
inline constexpr int kCenter = 6;

std::string anchor_name(int anchor);
std::optional<int> parse_anchor(std::string_view s);
/// Absolute anchor after rotating by `orientation`.
constexpr int rotate_anchor(int anchor, int orientation)
{
    return anchor == kCenter ? kCenter : wrap6(anchor + orientation);
}

struct Stroke {
    std::string layer;
    int from = 0;
    int to = 0;

    friend bool operator==(const Stroke&, const Stroke&) = default;
};

/// Plain, string-labelled contents of a rule-set document.
struct FaceData {
    std::string variant;
    Chirality chirality = Chirality::R;
    std::array<std::string, 6> edge_labels;
    std::array<std::string, 6> corner_labels;
    std::optional<int> male_edge_offset;
    std::vector<Stroke> strokes;

    friend bool operator==(const FaceData&, const FaceData&) = default;
};

struct RuleSetData {
    std::string name;
    std::vector<std::string> variants;
    std::vector<FaceData> faces;
    std::vector<std::pair<std::string, std::string>> k1_compat;
    std::vector<std::pair<std::string, std::string>> k3_compat;

    friend bool operator==(const RuleSetData&, const RuleSetData&) = default;
};

/// Validation or schema failure; path() names the offending field.
class RuleSetError : public std::runtime_error {
public:
    RuleSetError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path))
    {
    }

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

inline constexpr std::size_t kMaxStates = 64;

/// Validated, immutable rule set.
class RuleSet {
public:
    /// Validates and canonicalizes. Throws RuleSetError.
    static RuleSet build(RuleSetData data);

    const std::string& name() const { return data_.name; }
    const RuleSetData& data() const { return data_; }
    std::span<const std::string> variants() const { return data_.variants; }

    bool has_face(int variant, Chirality c) const;
    const FaceData& face(int variant, Chirality c) const;

    std::span<const std::string> labels() const { return labels_; }
    int label_id(std::string_view label) const;

    bool k1(int a, int b) const { return k1_[static_cast<std::size_t>(a) * labels_.size() + b] != 0; }
    bool k3(int a, int b) const { return k3_[static_cast<std::size_t>(a) * labels_.size() + b] != 0; }

    /// Every face declares a male edge.
    bool male_total() const;
    bool has_male_edges() const;
    bool has_layer(std::string_view layer) const;
    std::vector<std::string> layers() const;

    friend bool operator==(const RuleSet& a, const RuleSet& b) { return a.data_ == b.data_; }

private:
    RuleSetData data_;
    std::vector<std::string> labels_;
    std::vector<std::uint8_t> k1_;
    std::vector<std::uint8_t> k3_;
    // index variant * 2 + chirality into data_.faces, or -1
    std::vector<int> face_index_;
    std::vector<std::array<int, 6>> edge_ids_;
    std::vector<std::array<int, 6>> corner_ids_;

    friend class StateTable;
};

using RuleSetPtr = std::shared_ptr<const RuleSet>;

/// All declared (variant, orientation, chirality) triples: variants in
/// declaration order, R before F, orientation 0..5.
std::vector<TileState> enumerate_states(const RuleSet& rs);

bool is_valid_state(const RuleSet& rs, const TileState& s);

const std::string& edge_label(const RuleSet& rs, const TileState& s, int e);
const std::string& corner_label(const RuleSet& rs, const TileState& s, int k);
std::optional<int> male_edge_abs(const RuleSet& rs, const TileState& s);

/// Rotated strokes of one state (absolute anchors), optionally filtered by layer.
std::vector<Stroke> state_strokes(const RuleSet& rs, const TileState& s, std::string_view layer = {});

std::string state_to_string(const RuleSet& rs, const TileState& s);

/// Dense per-state lookup tables used by the solver and the verifier. State
/// indices follow enumerate_states().
class StateTable {
public:
    using Mask = std::uint64_t;

    explicit StateTable(const RuleSet& rs);

    int size() const { return static_cast<int>(states_.size()); }
    Mask full() const { return full_; }
    std::span<const TileState> states() const { return states_; }
    int index_of(const TileState& s) const;

    int edge(int s, int e) const { return edge_[s][e]; }
    int corner(int s, int k) const { return corner_[s][k]; }
    int male(int s) const { return male_[s]; }

    /// States t allowed on neighbor(A, e) when A holds s.
    Mask k1_allowed(int s, int e) const { return k1_mask_[e][s]; }
    /// For the lattice edge (A, e): C- states allowed when C+ holds s.
    Mask k3_minus_allowed(int plus_state, int e) const { return k3_minus_[e][plus_state]; }
    /// For the lattice edge (A, e): C+ states allowed when C- holds s.
    Mask k3_plus_allowed(int minus_state, int e) const { return k3_plus_[e][minus_state]; }

    /// States whose male edge points along absolute direction e.
    Mask male_along(int e) const { return male_along_[e]; }
    /// States without a male edge.
    Mask no_male() const { return no_male_; }

private:
    std::vector<TileState> states_;
    std::vector<std::array<int, 6>> edge_;
    std::vector<std::array<int, 6>> corner_;
    std::vector<int> male_;
    std::array<std::vector<Mask>, 6> k1_mask_;
    std::array<std::vector<Mask>, 6> k3_minus_;
    std::array<std::vector<Mask>, 6> k3_plus_;
    std::array<Mask, 6> male_along_{};
    Mask no_male_ = 0;
    Mask full_ = 0;
};

} // namespace hexmono
