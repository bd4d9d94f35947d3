#pragma once

// Integer geometry of the hexagonal lattice in axial coordinates.
//
// Edge e of a cell points along dir(e) with dir(0) = (1,0) and
// dir(e) = rotate60(dir(e-1)), rotate60(q,r) = (-r, q+r).
// Corner k is the vertex between edges k and (k+1) mod 6.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hexmono {

struct Cell {
    int q = 0;
    int r = 0;

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

    constexpr Cell operator+(const Cell& o) const { return {q + o.q, r + o.r}; }
    constexpr Cell operator-(const Cell& o) const { return {q - o.q, r - o.r}; }
    constexpr Cell operator-() const { return {-q, -r}; }
    constexpr Cell operator*(int k) const { return {q * k, r * k}; }
};

std::string to_string(const Cell& c);

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept
    {
        auto h = static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.q)) << 32;
        h |= static_cast<std::uint32_t>(c.r);
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return static_cast<std::size_t>(h);
    }
};

inline constexpr int kEdges = 6;

constexpr int wrap6(int k) { return ((k % kEdges) + kEdges) % kEdges; }

constexpr Cell rotate60(const Cell& c) { return {-c.r, c.q + c.r}; }

constexpr Cell direction(int e)
{
    constexpr std::array<Cell, 6> table{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
    return table[static_cast<std::size_t>(wrap6(e))];
}

constexpr int opposite(int e) { return wrap6(e + 3); }

/// Edge index e with direction(e) == d, or -1 when d is not a unit step.
constexpr int direction_index(const Cell& d)
{
    for (int e = 0; e < kEdges; ++e)
        if (direction(e) == d)
            return e;
    return -1;
}

constexpr Cell neighbor(const Cell& c, int e) { return c + direction(e); }

constexpr Cell rotate_cell(Cell c, int k)
{
    for (int i = 0; i < wrap6(k); ++i)
        c = rotate60(c);
    return c;
}

/// Lattice distance (number of edge steps).
constexpr int hex_distance(const Cell& a, const Cell& b)
{
    const int dq = a.q - b.q;
    const int dr = a.r - b.r;
    const int ds = -dq - dr;
    const int aq = dq < 0 ? -dq : dq;
    const int ar = dr < 0 ? -dr : dr;
    const int as = ds < 0 ? -ds : ds;
    return (aq > ar ? (aq > as ? aq : as) : (ar > as ? ar : as));
}

/// Distance from the origin, max(|q|, |r|, |q+r|).
constexpr int hex_norm(const Cell& c) { return hex_distance(c, Cell{}); }

/// Finite set of cells, kept sorted by (q, r).
class Region {
public:
    enum class Kind { Hex, Cells };

    Region() = default;

    static Region hex(int radius);
    static Region from_cells(std::vector<Cell> cells);

    Kind kind() const { return kind_; }
    int radius() const { return radius_; }
    std::span<const Cell> cells() const& { return cells_; }
    std::span<const Cell> cells() const&& = delete;
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    bool contains(const Cell& c) const { return index_.contains(c); }
    /// Position of c in cells(), or -1.
    int index_of(const Cell& c) const;

    friend bool operator==(const Region& a, const Region& b)
    {
        return a.kind_ == b.kind_ && a.radius_ == b.radius_ && a.cells_ == b.cells_;
    }

private:
    void build_index();

    Kind kind_ = Kind::Cells;
    int radius_ = -1;
    std::vector<Cell> cells_;
    std::unordered_map<Cell, int, CellHash> index_;
};

/// All cells with max(|q|, |r|, |q+r|) <= radius; 3R^2 + 3R + 1 of them.
Region region_cells(int radius);

class DegenerateBasis : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Generators of a rank-2 sublattice. The quotient of the plane by it is a torus
/// with |det| cell classes.
struct TorusBasis {
    Cell u;
    Cell v;

    constexpr long long det() const
    {
        return static_cast<long long>(u.q) * v.r - static_cast<long long>(u.r) * v.q;
    }

    friend constexpr bool operator==(const TorusBasis&, const TorusBasis&) = default;
    friend constexpr auto operator<=>(const TorusBasis&, const TorusBasis&) = default;
};

/// Hermite normal form u = (a, 0), v = (b, d) with a, d > 0 and 0 <= b < a,
/// generating the same lattice. Throws DegenerateBasis when det = 0.
TorusBasis hermite_form(const TorusBasis& basis);

/// Canonical representative (q, r) with 0 <= r < d and 0 <= q < a in terms of the
/// Hermite form. Throws DegenerateBasis when det = 0.
Cell torus_reduce(const Cell& c, const TorusBasis& basis);

/// Precomputed reduction for repeated queries against one basis.
class TorusQuotient {
public:
    explicit TorusQuotient(const TorusBasis& basis);

    const TorusBasis& basis() const { return hnf_; }
    std::size_t size() const { return classes_.size(); }
    /// Class representatives sorted by (q, r).
    std::span<const Cell> classes() const { return classes_; }

    Cell reduce(const Cell& c) const;
    int class_index(const Cell& c) const;

private:
    TorusBasis hnf_;
    std::vector<Cell> classes_;
};

/// Every Hermite-form basis with 1 <= det <= max_det, ordered by (det, a, b).
/// There are sigma(n) of them for each determinant n.
std::vector<TorusBasis> canonical_bases(int max_det);

} // namespace hexmono

template <>
struct std::hash<hexmono::Cell> : hexmono::CellHash {};
