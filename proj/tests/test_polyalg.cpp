#include <doctest.h>

#include "lastrow/poly.hpp"

#include <algorithm>
#include <random>

using namespace lastrow;

namespace {

// largest distance from an expected root to the closest computed one
template <typename T>
double match_error(const std::vector<Complex<T>>& got, const std::vector<Complex<T>>& want) {
    double worst = 0.0;
    for (const auto& w : want) {
        double best = 1e300;
        for (const auto& g : got) best = std::min(best, to_double(std::abs(g - w)));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("ring operations") {
    Poly<double> p({Cd(1), Cd(2)});        // 1 + 2z
    Poly<double> q({Cd(0), Cd(0), Cd(3)});  // 3z^2
    auto s = p + q;
    CHECK(s.degree() == 2);
    CHECK(s[1] == Cd(2));
    auto d = p - p;
    CHECK(d.is_zero());
    CHECK(d.degree() == -1);
    auto m = p * q;
    CHECK(m.degree() == 3);
    CHECK(m[2] == Cd(3));
    CHECK(m[3] == Cd(6));
    CHECK((Cd(0, 1) * p)[1] == Cd(0, 2));
    CHECK(p(Cd(2)) == Cd(5));
    CHECK(p.derivative() == Poly<double>({Cd(2)}));
}

TEST_CASE("trimming drops small leading coefficients only") {
    Poly<double> p({Cd(1), Cd(1), Cd(1e-14)});
    CHECK(p.trimmed(1e-12).degree() == 1);
    CHECK(p.trimmed(1e-16).degree() == 2);
    Poly<double> z({Cd(0), Cd(0)});
    CHECK(z.is_zero());
}

TEST_CASE("synthetic division") {
    std::vector<Cd> r{Cd(1), Cd(-2), Cd(0, 3)};
    auto p = Poly<double>::from_roots(r);
    auto q = divided_by_linear(p, Cd(-2), 1e-12);
    CHECK(q.degree() == 2);
    CHECK(std::abs(q(Cd(1))) < 1e-12);
    CHECK(std::abs(q(Cd(0, 3))) < 1e-12);
    CHECK_THROWS_AS(divided_by_linear(p, Cd(5), 1e-12), NotARoot);
}

TEST_CASE("roots of products of linear factors") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int deg : {1, 2, 5, 12, 20}) {
        std::vector<Cd> want;
        for (int k = 0; k < deg; ++k) want.emplace_back(u(rng), u(rng));
        auto p = Poly<double>::from_roots(want, Cd(0.5, -1.0));
        auto rs = roots(p);
        REQUIRE(rs.roots.size() == want.size());
        CHECK(match_error(rs.roots, want) < 1e-7);
        CHECK(match_error(want, rs.roots) < 1e-7);
    }
}

TEST_CASE("exact zeros at the origin are split off") {
    Poly<double> p({Cd(0), Cd(0), Cd(-1), Cd(1)});  // z^2 (z - 1)
    auto rs = roots(p);
    REQUIRE(rs.roots.size() == 3);
    CHECK(std::count(rs.roots.begin(), rs.roots.end(), Cd(0)) == 2);
    CHECK(match_error(rs.roots, std::vector<Cd>{Cd(1)}) < 1e-12);
}

TEST_CASE("multiple root is found to the expected accuracy") {
    std::vector<Cd> want{Cd(1), Cd(1), Cd(1), Cd(-0.5)};
    auto rs = roots(Poly<double>::from_roots(want));
    REQUIRE(rs.roots.size() == 4);
    CHECK(match_error(rs.roots, want) < 1e-4);
    CHECK(rs.residual < 1e-10);
}

TEST_CASE("extended precision roots") {
    std::vector<Cx> want{Cx(Extended(1) / 3), Cx(Extended(0), Extended(2)), Cx(Extended(-1), Extended(1) / 7)};
    auto rs = roots(Poly<Extended>::from_roots(want));
    REQUIRE(rs.roots.size() == 3);
    CHECK(match_error(rs.roots, want) < 1e-40);
}

TEST_CASE("degree zero is rejected") {
    CHECK_THROWS_AS(roots(Poly<double>({Cd(3)})), InputError);
}

TEST_CASE("projective distance") {
    std::vector<Cd> u{Cd(1), Cd(2, 1), Cd(0, -1)};
    std::vector<Cd> v;
    for (auto x : u) v.push_back(x * Cd(-0.3, 2.0));
    CHECK(projective_distance<double>(u, v) < 1e-14);
    std::vector<Cd> e0{Cd(1), Cd(0)}, e1{Cd(0), Cd(1)};
    CHECK(projective_distance<double>(e0, e1) == doctest::Approx(1.0));
    std::vector<Cd> tilt{Cd(1), Cd(0, 1e-12)};
    CHECK(projective_distance<double>(e0, tilt) == doctest::Approx(1e-12).epsilon(1e-6));
}

TEST_CASE("unit_from_turns is exact on quarter turns") {
    CHECK(unit_from_turns<double>(0.25) == Cd(0, 1));
    CHECK(unit_from_turns<double>(-0.5) == Cd(-1, 0));
    CHECK(unit_from_turns<double>(3.0) == Cd(1, 0));
    auto z = unit_from_turns<double>(0.125);
    CHECK(z.real() == doctest::Approx(std::sqrt(0.5)));
}
