#include <doctest.h>

#include "lastrow/presets.hpp"
#include "lastrow/region.hpp"

using namespace lastrow;

namespace {

struct TwoPole {
    MeromorphicModel m = presets::symmetric_two_pole();
    DominantAnalysis d = analyze_poles(m);
    CjTable c = compute_cj(m, d);
    TorusSpec t = make_torus(m, d, TorusSpec::Rank::Relations, {{0, 1, 0}, {1, 0, 2}});
};

}  // namespace

TEST_CASE("g_j of the two-pole model in closed form") {
    TwoPole tp;
    for (Cd z : {Cd(0.3, 0.2), Cd(-0.7, 0.1), Cd(0, 0.5), Cd(1.3, -2)}) {
        // C = (-1/4, 1/4), Delta_1 = z + 1, Delta_2 = z - 1
        const double a = std::abs(z + 1.0) / 4, b = std::abs(z - 1.0) / 4;
        auto g = g_values(tp.c, z);
        REQUIRE(g.size() == 2);
        CHECK(g[0] == doctest::Approx(a - b));
        CHECK(g[1] == doctest::Approx(b - a));
        CHECK(g_scale(tp.c, z) == doctest::Approx(a + b));
        CHECK(in_N(tp.c, z) == (std::abs(z.real()) < 1e-15));
    }
}

TEST_CASE("grid coordinates are symmetric") {
    RegionGrid g;
    g.box = {-1.2, 1.2, -1.2, 1.2};
    g.nx = g.ny = 13;
    CHECK(g.x(0) == -1.2);
    CHECK(g.x(12) == 1.2);
    CHECK(g.x(6) == 0.0);
    auto node = g.nearest_node(Cd(0.21, -0.19));
    REQUIRE(node.has_value());
    CHECK(node->first == 7);
    CHECK(node->second == 5);
    CHECK(!g.nearest_node(Cd(2, 0)).has_value());
}

TEST_CASE("two-pole N mask hugs the imaginary axis") {
    TwoPole tp;
    auto nf = sample_NF(tp.c, tp.t, tp.d, 50);
    auto grid = scan_region(tp.m, tp.d, tp.c, {-1.2, 1.2, -1.2, 1.2}, 101, 101, {}, &tp.t, &nf);
    int flagged = 0;
    for (int k = 0; k < grid.ny; ++k)
        for (int i = 0; i < grid.nx; ++i)
            if (grid.in_N[grid.index(i, k)]) {
                ++flagged;
                CHECK(std::abs(grid.x(i)) <= grid.dx());
            }
    CHECK(flagged >= grid.ny);
    CHECK(grid.uf_available);
    CHECK(grid.deleted_poles.empty());
    // the single sampled zero 0 removes exactly the centre node from U_F
    auto centre = grid.index(50, 50);
    CHECK(!grid.in_UF[centre]);
    CHECK(grid.in_UF[grid.index(50, 60)]);
}

TEST_CASE("two-pole omega zeros are the origin") {
    TwoPole tp;
    auto nf = sample_NF(tp.c, tp.t, tp.d, 40);
    CHECK(!nf.nf_equals_n);
    CHECK(nf.skipped == 0);
    REQUIRE(nf.points.size() == 20);  // one zero for every other orbit step
    for (const auto& z : nf.points) CHECK(std::abs(z) < 1e-8);
}

TEST_CASE("boundaries of the two-pole g_j lie on the axis") {
    TwoPole tp;
    auto grid = scan_region(tp.m, tp.d, tp.c, {-1.2, 1.2, -1.2, 1.2}, 60, 60, {}, &tp.t);
    auto curves = trace_boundaries(grid, tp.c);
    REQUIRE(curves.nu() == 2);
    for (int j = 0; j < 2; ++j) {
        CHECK(curves.component_count[static_cast<std::size_t>(j)] == 1);
        for (const auto& pl : curves.curves[static_cast<std::size_t>(j)])
            for (const auto& v : pl.vertices) CHECK(std::abs(v.real()) < 1e-12);
    }
}

TEST_CASE("three-pole region masks") {
    auto m = presets::irrational_three_pole();
    auto d = analyze_poles(m);
    auto c = compute_cj(m, d);
    auto t = make_torus(m, d, TorusSpec::Rank::IndependentOverQ);
    auto grid = scan_region(m, d, c, Box::around_disk(d.rho), 121, 121, {}, &t);
    REQUIRE(grid.deleted_poles.size() == 1);
    CHECK(grid.in_UF == grid.in_U);
    for (int k = 0; k < grid.ny; ++k)
        for (int i = 0; i < grid.nx; ++i) {
            const auto id = grid.index(i, k);
            const Cd z = grid.point(i, k);
            if (grid.in_U[id]) {
                CHECK(std::abs(z) < 1.0);
                CHECK(!grid.in_N[id]);
                CHECK(std::abs(z - 0.5) >= grid.exclusion_radius);
            }
            CHECK(bool(grid.in_N[id]) == in_N(c, z));
        }
    auto curves = trace_boundaries(grid, c);
    for (int j = 0; j < 3; ++j)
        for (const auto& pl : curves.curves[static_cast<std::size_t>(j)])
            for (const auto& v : pl.vertices) {
                const double gj = g_values(c, v)[static_cast<std::size_t>(j)];
                CHECK(std::abs(gj) <= curve_tolerance(grid, c, j, v));
            }
}

TEST_CASE("NF fill fraction") {
    auto m = presets::irrational_three_pole();
    auto d = analyze_poles(m);
    auto c = compute_cj(m, d);
    auto t = make_torus(m, d, TorusSpec::Rank::IndependentOverQ);
    auto nf = sample_NF(c, t, d, 400);
    CHECK(nf.nf_equals_n);
    CHECK(nf.points.size() == 800);  // omega has degree nu - 1 = 2
    auto grid = scan_region(m, d, c, Box::around_disk(1.0), 61, 61, {}, &t);
    const double f = nf_fill_fraction(grid, nf);
    CHECK(f > 0.0);
    CHECK(f <= 1.0);
    NFSample empty;
    CHECK(nf_fill_fraction(grid, empty) == 0.0);
}
