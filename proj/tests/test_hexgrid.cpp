#include "hexmono/hexgrid.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>

using namespace hexmono;

TEST(Hexgrid, NeighborExamples)
{
    EXPECT_EQ(neighbor({0, 0}, 0), (Cell{1, 0}));
    EXPECT_EQ(neighbor({2, -1}, 3), (Cell{1, -1}));
    EXPECT_EQ(neighbor({5, 7}, 4), (Cell{5, 6}));
}

TEST(Hexgrid, OppositeExamples)
{
    EXPECT_EQ(opposite(0), 3);
    EXPECT_EQ(opposite(5), 2);
    for (int e = 0; e < 6; ++e)
        EXPECT_EQ(direction(opposite(e)), -direction(e));
}

TEST(Hexgrid, DirectionsAreRotations)
{
    for (int e = 1; e < 6; ++e)
        EXPECT_EQ(direction(e), rotate60(direction(e - 1)));
    EXPECT_EQ(rotate60(direction(5)), direction(0));
}

TEST(Hexgrid, DirectionsPointAtSixtyDegreeSteps)
{
    for (int e = 0; e < 6; ++e) {
        const oracle::Point p = oracle::center(direction(e));
        EXPECT_NEAR(std::atan2(p.y, p.x), std::remainder(e * M_PI / 3, 2 * M_PI), 1e-12) << e;
        EXPECT_NEAR(std::hypot(p.x, p.y), 1.0, 1e-12);
    }
}

TEST(Hexgrid, RotateExamples)
{
    for (int k = -7; k <= 7; ++k)
        EXPECT_EQ(rotate_cell({0, 0}, k), (Cell{0, 0}));
    EXPECT_EQ(rotate_cell({1, 0}, 1), (Cell{0, 1}));
    EXPECT_EQ(rotate_cell({1, 0}, 6), (Cell{1, 0}));
}

TEST(Hexgrid, RegionExamples)
{
    EXPECT_EQ(region_cells(0).size(), 1u);
    EXPECT_EQ(region_cells(1).size(), 7u);
    EXPECT_EQ(region_cells(2).size(), 19u);
    EXPECT_THROW(region_cells(-1), std::invalid_argument);
}

TEST(Hexgrid, RegionSizeFormula)
{
    for (int r = 0; r <= 12; ++r)
        EXPECT_EQ(region_cells(r).size(), static_cast<std::size_t>(3 * r * r + 3 * r + 1)) << r;
}

TEST(Hexgrid, RegionIsSortedAndIndexed)
{
    const Region reg = region_cells(4);
    const auto cells = reg.cells();
    EXPECT_TRUE(std::is_sorted(cells.begin(), cells.end()));
    for (std::size_t i = 0; i < cells.size(); ++i)
        EXPECT_EQ(reg.index_of(cells[i]), static_cast<int>(i));
    EXPECT_EQ(reg.index_of({5, 0}), -1);
    EXPECT_FALSE(reg.contains({5, 0}));
}

TEST(HexgridProperty, NeighborOppositeRoundTrip)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coord(-1000, 1000);
    std::uniform_int_distribution<int> edge(0, 5);
    for (int i = 0; i < 1000; ++i) {
        const Cell c{coord(rng), coord(rng)};
        const int e = edge(rng);
        EXPECT_EQ(neighbor(neighbor(c, e), opposite(e)), c);
        EXPECT_EQ(hex_distance(c, neighbor(c, e)), 1);
    }
}

TEST(HexgridProperty, RotationIsRegionBijection)
{
    for (int radius = 0; radius <= 6; ++radius) {
        const Region reg = region_cells(radius);
        for (int k = 0; k < 6; ++k) {
            std::set<Cell> image;
            for (const Cell& c : reg.cells()) {
                const Cell r = rotate_cell(c, k);
                EXPECT_TRUE(reg.contains(r));
                EXPECT_EQ(hex_norm(r), hex_norm(c));
                image.insert(r);
            }
            EXPECT_EQ(image.size(), reg.size());
        }
    }
}

TEST(HexgridProperty, CornerSharedByExactlyThreeCells)
{
    const Region region = region_cells(3);
    for (const Cell& a : region.cells())
        for (int k = 0; k < 6; ++k) {
            std::vector<Cell> at = oracle::cells_at_corner(a, k);
            std::sort(at.begin(), at.end());
            std::vector<Cell> expect{a, neighbor(a, k), neighbor(a, k + 1)};
            std::sort(expect.begin(), expect.end());
            EXPECT_EQ(at, expect);
        }
}

TEST(Torus, ReduceExamples)
{
    EXPECT_EQ(torus_reduce({5, 1}, {{4, 0}, {0, 4}}), (Cell{1, 1}));
    EXPECT_EQ(torus_reduce({0, 0}, {{2, 1}, {-1, 3}}), (Cell{0, 0}));
    EXPECT_THROW(torus_reduce({1, 1}, {{2, 1}, {4, 2}}), DegenerateBasis);
    EXPECT_THROW(TorusQuotient({{1, 0}, {2, 0}}), DegenerateBasis);
}

TEST(Torus, SevenClassesAgainstFloodOracle)
{
    const TorusBasis b{{2, 1}, {-1, 3}};
    const auto reps = oracle::torus_classes(b);
    EXPECT_EQ(reps.size(), 7u);
    std::set<Cell> reduced;
    for (const Cell& c : reps)
        reduced.insert(torus_reduce(c, b));
    EXPECT_EQ(reduced.size(), 7u);
    EXPECT_EQ(TorusQuotient(b).size(), 7u);
}

TEST(Torus, HermiteFormShape)
{
    const TorusBasis h = hermite_form({{2, 1}, {-1, 3}});
    EXPECT_EQ(h.u.r, 0);
    EXPECT_GT(h.u.q, 0);
    EXPECT_GT(h.v.r, 0);
    EXPECT_GE(h.v.q, 0);
    EXPECT_LT(h.v.q, h.u.q);
    EXPECT_EQ(h.det(), 7);
    // same lattice
    const TorusBasis b{{2, 1}, {-1, 3}};
    EXPECT_TRUE(oracle::in_lattice(h.u, b));
    EXPECT_TRUE(oracle::in_lattice(h.v, b));
    EXPECT_TRUE(oracle::in_lattice(b.u, h));
    EXPECT_TRUE(oracle::in_lattice(b.v, h));
}

TEST(TorusProperty, RandomBasesHaveDetClasses)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(-8, 8);
    int tested = 0;
    while (tested < 20) {
        const TorusBasis b{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        const long long det = b.det();
        if (det == 0 || std::llabs(det) > 36)
            continue;
        ++tested;
        const auto n = static_cast<std::size_t>(std::llabs(det));
        EXPECT_EQ(oracle::torus_classes(b).size(), n);
        const TorusQuotient tq(b);
        EXPECT_EQ(tq.size(), n);
        std::set<Cell> reps;
        std::uniform_int_distribution<int> far(-500, 500);
        for (int i = 0; i < 400; ++i) {
            const Cell c{far(rng), far(rng)};
            const Cell r = torus_reduce(c, b);
            EXPECT_TRUE(oracle::in_lattice(c - r, b));
            EXPECT_EQ(torus_reduce(r, b), r);
            EXPECT_EQ(tq.reduce(c), r);
            reps.insert(r);
        }
        EXPECT_LE(reps.size(), n);
        EXPECT_EQ(torus_reduce(b.u, b), (Cell{0, 0}));
        EXPECT_EQ(torus_reduce(b.v, b), (Cell{0, 0}));
    }
}

TEST(Torus, CanonicalBasesCountIsDivisorSum)
{
    const auto bases = canonical_bases(12);
    for (int n = 1; n <= 12; ++n) {
        int sigma = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0)
                sigma += d;
        const auto count = std::count_if(bases.begin(), bases.end(), [&](const TorusBasis& b) { return b.det() == n; });
        EXPECT_EQ(count, sigma) << n;
    }
    EXPECT_EQ(canonical_bases(9).size(), 69u);
    EXPECT_TRUE(std::is_sorted(bases.begin(), bases.end(), [](const TorusBasis& a, const TorusBasis& b) {
        return std::tuple(a.det(), a.u.q, a.v.q) < std::tuple(b.det(), b.u.q, b.v.q);
    }));
}

TEST(Torus, CanonicalBasesAreDistinctLattices)
{
    const auto bases = canonical_bases(8);
    for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
            if (bases[i].det() != bases[j].det())
                continue;
            const bool same = oracle::in_lattice(bases[i].u, bases[j]) && oracle::in_lattice(bases[i].v, bases[j]);
            EXPECT_FALSE(same) << i << " " << j;
        }
}
