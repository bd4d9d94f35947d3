#include "hexmono/hexgrid.hpp"

#include <algorithm>
#include <numeric>

namespace hexmono {

namespace {

long long floor_div(long long a, long long b)
{
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

long long floor_mod(long long a, long long b) { return a - floor_div(a, b) * b; }

// x*a + y*b = g, g >= 0
long long ext_gcd(long long a, long long b, long long& x, long long& y)
{
    long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const long long quot = floor_div(old_r, r);
        old_r -= quot * r;
        std::swap(old_r, r);
        old_s -= quot * s;
        std::swap(old_s, s);
        old_t -= quot * t;
        std::swap(old_t, t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

} // namespace

std::string to_string(const Cell& c)
{
    return "(" + std::to_string(c.q) + "," + std::to_string(c.r) + ")";
}

Region Region::hex(int radius)
{
    if (radius < 0)
        throw std::invalid_argument("region radius must be nonnegative");
    Region region;
    region.kind_ = Kind::Hex;
    region.radius_ = radius;
    for (int q = -radius; q <= radius; ++q)
        for (int r = -radius; r <= radius; ++r)
            if (hex_norm({q, r}) <= radius)
                region.cells_.push_back({q, r});
    region.build_index();
    return region;
}

Region Region::from_cells(std::vector<Cell> cells)
{
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    Region region;
    region.kind_ = Kind::Cells;
    region.cells_ = std::move(cells);
    region.build_index();
    return region;
}

int Region::index_of(const Cell& c) const
{
    const auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
}

void Region::build_index()
{
    index_.clear();
    index_.reserve(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
        index_.emplace(cells_[i], static_cast<int>(i));
}

Region region_cells(int radius) { return Region::hex(radius); }

TorusBasis hermite_form(const TorusBasis& basis)
{
    const long long det = basis.det();
    if (det == 0)
        throw DegenerateBasis("torus basis is degenerate (det = 0)");

    long long x = 0, y = 0;
    const long long g = ext_gcd(basis.u.r, basis.v.r, x, y);
    // g > 0 here: if both r components vanished det would be 0.
    const long long a = (det < 0 ? -det : det) / g;
    const long long wq = x * basis.u.q + y * basis.v.q;
    const long long b = floor_mod(wq, a);
    return TorusBasis{{static_cast<int>(a), 0}, {static_cast<int>(b), static_cast<int>(g)}};
}

Cell torus_reduce(const Cell& c, const TorusBasis& basis)
{
    const TorusBasis h = hermite_form(basis);
    const long long k = floor_div(c.r, h.v.r);
    const long long q = c.q - k * h.v.q;
    const long long r = c.r - k * h.v.r;
    return {static_cast<int>(floor_mod(q, h.u.q)), static_cast<int>(r)};
}

TorusQuotient::TorusQuotient(const TorusBasis& basis) : hnf_(hermite_form(basis))
{
    classes_.reserve(static_cast<std::size_t>(hnf_.u.q) * static_cast<std::size_t>(hnf_.v.r));
    for (int q = 0; q < hnf_.u.q; ++q)
        for (int r = 0; r < hnf_.v.r; ++r)
            classes_.push_back({q, r});
}

Cell TorusQuotient::reduce(const Cell& c) const
{
    const long long k = floor_div(c.r, hnf_.v.r);
    const long long q = c.q - k * hnf_.v.q;
    const long long r = c.r - k * hnf_.v.r;
    return {static_cast<int>(floor_mod(q, hnf_.u.q)), static_cast<int>(r)};
}

int TorusQuotient::class_index(const Cell& c) const
{
    const Cell rep = reduce(c);
    return rep.q * hnf_.v.r + rep.r;
}

std::vector<TorusBasis> canonical_bases(int max_det)
{
    std::vector<TorusBasis> out;
    for (int n = 1; n <= max_det; ++n)
        for (int a = 1; a <= n; ++a) {
            if (n % a != 0)
                continue;
            const int d = n / a;
            for (int b = 0; b < a; ++b)
                out.push_back({{a, 0}, {b, d}});
        }
    return out;
}

} // namespace hexmono
