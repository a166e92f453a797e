#include <doctest.h>

#include "lastrow/pade.hpp"
#include "lastrow/presets.hpp"
#include "lastrow/region.hpp"
#include "lastrow/rowtheory.hpp"

using namespace lastrow;

namespace {

bool near(const Cd& a, const Cd& b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("pole ordering of the three-pole example") {
    auto m = presets::irrational_three_pole();
    auto d = analyze_poles(m);
    CHECK(d.rho == doctest::Approx(1.0));
    CHECK(d.ell == 4);
    CHECK(d.mu == 3);
    CHECK(d.nu == 3);
    CHECK(d.lambda == 4);
    CHECK(d.order == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("dominant multiplicity sorts first") {
    auto one = Cx(Extended(1));
    MeromorphicModel m(2.0, {}, Poly<Extended>({one}),
                       {PoleSpec::cartesian(Cx(Extended("0.5"))), PoleSpec::cartesian(Cx(Extended(-1))),
                        PoleSpec::cartesian(Cx(Extended(0), Extended(1)), 2)});
    auto d = analyze_poles(m);
    CHECK(d.mu == 2);
    CHECK(d.nu == 1);
    CHECK(d.lambda == 4);
    CHECK(d.order == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("C_j of the three-pole example") {
    auto m = presets::irrational_three_pole();
    auto c = compute_cj(m, analyze_poles(m));
    REQUIRE(c.nu() == 3);
    CHECK(near(c.C[0], Cd(0.70400, 0.17095), 1e-4));
    CHECK(near(c.C[1], Cd(0.07853, 0.17437), 1e-4));
    CHECK(near(c.C[2], Cd(0.29275, 0.04487), 1e-4));
}

TEST_CASE("C_j of 2/(1-z^2) and of a double pole") {
    auto m = presets::symmetric_two_pole();
    auto c = compute_cj(m, analyze_poles(m));
    REQUIRE(c.nu() == 2);
    CHECK(near(c.C[0], Cd(-0.25, 0), 1e-14));
    CHECK(near(c.C[1], Cd(0.25, 0), 1e-14));

    // 1/(z-1)^2 alone: A = 1, s = 2, D_1 = 1, C = 1 / (1! * 1 * 1 * 1) = 1
    MeromorphicModel dbl(2.0, {}, Poly<Extended>({Cx(Extended(1))}), {PoleSpec::cartesian(Cx(Extended(1)), 2)});
    auto cd = compute_cj(dbl, analyze_poles(dbl));
    CHECK(near(cd.C[0], Cd(1, 0), 1e-14));
}

TEST_CASE("zero principal coefficient is rejected") {
    // (z - 1) / ((z - 1)(z + 1)) is not in lowest terms: A at z = 1 vanishes
    MeromorphicModel m(2.0, {}, Poly<Extended>({Cx(Extended(-1)), Cx(Extended(1))}),
                       {PoleSpec::cartesian(Cx(Extended(1))), PoleSpec::cartesian(Cx(Extended(-1)))});
    CHECK_THROWS_AS(compute_cj(m, analyze_poles(m)), ZeroPrincipalCoefficient);
}

TEST_CASE("orbit points against high-precision values") {
    auto m = presets::irrational_three_pole();
    auto d = analyze_poles(m);
    auto t = make_torus(m, d, TorusSpec::Rank::IndependentOverQ);
    CHECK(!t.thetas_inferred);
    struct Row {
        std::int64_t n;
        Cd z[3];
    };
    const Row rows[] = {
        {1, {{-0.85821618566881769, 0.51328839715706164}, {-0.11253918524088624, -0.99364728741405896},
             {0.0874257247169604, 0.99617104086482772}}},
        {7, {{0.80714764214948583, -0.59034962841736892}, {0.70996373673324, 0.70423823563036868},
             {-0.57512942913974018, -0.8180624302199659}}},
        {1000003, {{0.33881939540717389, -0.9408514321060032}, {0.99972666243504685, 0.023379487087656186},
                   {-0.393086062185978, -0.91950168445474935}}},
        {123456789, {{-0.68835549353114356, 0.72537350001602332}, {0.85326172246746891, 0.52148291723876062},
                     {-0.99708664124413924, 0.076277322006486123}}},
    };
    for (const auto& r : rows) {
        auto p = orbit_point(t, r.n);
        REQUIRE(p.size() == 3);
        for (int j = 0; j < 3; ++j) CHECK(near(p[static_cast<std::size_t>(j)], r.z[j], 1e-14));
    }
}

TEST_CASE("torus from Cartesian poles infers the arguments") {
    auto m = presets::symmetric_two_pole();
    auto d = analyze_poles(m);
    auto t = make_torus(m, d, TorusSpec::Rank::Relations, {{0, 2, 0}, {1, 0, 2}});
    CHECK(t.thetas_inferred);
    CHECK(to_double(t.thetas[0]) == doctest::Approx(0.0));
    CHECK(to_double(t.thetas[1]) == doctest::Approx(0.5));
    auto p = orbit_point(t, 3);
    CHECK(near(p[0], Cd(1, 0), 1e-15));
    CHECK(near(p[1], Cd(-1, 0), 1e-15));
    CHECK_THROWS_AS(make_torus(m, d, TorusSpec::Rank::Relations, {{0, 1}}), InputError);
}

TEST_CASE("omega zeros and the two-pole closed form") {
    auto m = presets::symmetric_two_pole();
    auto c = compute_cj(m, analyze_poles(m));
    // omega = -1/4 (z + 1) tau_1 + 1/4 (z - 1) tau_2; tau = (1, -1) gives -z/2
    auto w = omega_at(c, {Cd(1), Cd(-1)});
    auto z = omega_zeros(w, c);
    REQUIRE(z.size() == 1);
    CHECK(std::abs(z[0]) < 1e-14);
    // tau = (1, 1) gives the constant -1/2: no zeros
    CHECK(omega_zeros(omega_at(c, {Cd(1), Cd(1)}), c).empty());
    CHECK_THROWS_AS(omega_at(c, {Cd(1)}), InputError);
    CHECK_THROWS_AS(omega_at(c, {Cd(1), Cd(2)}), InputError);
}

TEST_CASE("omega zeros lie in the g_j <= 0 region") {
    auto m = presets::irrational_three_pole();
    auto d = analyze_poles(m);
    auto c = compute_cj(m, d);
    auto t = make_torus(m, d, TorusSpec::Rank::IndependentOverQ);
    for (std::int64_t n = 0; n < 200; ++n) {
        for (const auto& z : omega_zeros(omega_at(c, orbit_point(t, n)), c)) {
            auto g = g_values(c, z);
            CHECK(*std::max_element(g.begin(), g.end()) <= 1e-9 * g_scale(c, z));
        }
    }
}

TEST_CASE("predicted limit poles") {
    auto m = presets::irrational_three_pole();
    auto d = analyze_poles(m);
    auto c = compute_cj(m, d);
    auto t = make_torus(m, d, TorusSpec::Rank::IndependentOverQ);
    auto p = predicted_limit_poles(m, d, c, &t);
    CHECK(p.nf_equals_n);
    CHECK(p.nu == 3);
    REQUIRE(p.isolated.size() == 1);
    CHECK(near(p.isolated[0].location, Cd(0.5, 0), 1e-15));
    CHECK(p.isolated[0].multiplicity == 1);
    CHECK(!p.isolated[0].dominant);

    auto m2 = presets::symmetric_two_pole();
    auto d2 = analyze_poles(m2);
    auto p2 = predicted_limit_poles(m2, d2, compute_cj(m2, d2));
    CHECK(!p2.nf_equals_n);
    CHECK(p2.isolated.empty());
}

TEST_CASE("Q_{n,lambda-1} zeros track omega(., xi^{n+lambda}) and 1/2") {
    auto m = presets::irrational_three_pole();
    auto d = analyze_poles(m);
    auto c = compute_cj(m, d);
    auto t = make_torus(m, d, TorusSpec::Rank::IndependentOverQ);
    auto s = m.taylor_coefficients_as<Extended>(80);
    for (int n : {40, 70}) {
        auto pa = pade_approximant(s, n, 3);
        auto got = pade_poles(pa).roots;
        std::vector<Cd> want = omega_zeros(omega_at(c, orbit_point(t, n + d.lambda)), c);
        want.emplace_back(0.5, 0.0);
        REQUIRE(got.size() == want.size());
        for (const auto& w : want) {
            double best = 1e300;
            for (const auto& g : got) best = std::min(best, std::abs(to_cd(g) - w));
            CHECK(best < 1e-6);
        }
    }
}
