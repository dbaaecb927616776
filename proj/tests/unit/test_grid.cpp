#include <doctest.h>

#include <cmath>
#include <random>

#include "mixkin/errors.hpp"
#include "mixkin/grid.hpp"

using namespace mixkin;

TEST_CASE("build_grid: paper-sized periodic grid") {
    const PhaseGrid g = build_grid({-1.0, 1.0}, 200, Boundary::periodic, {-15.0, 15.0}, 60);
    CHECK(g.dx == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(g.dv == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.nx() == 200);
    CHECK(g.nv() == 61);
    CHECK(g.x_nodes.front() == -1.0);
    CHECK(g.x_nodes.back() == doctest::Approx(1.0 - g.dx).epsilon(1e-14));
    CHECK(g.v_nodes.front() == -15.0);
    CHECK(g.v_nodes.back() == doctest::Approx(15.0).epsilon(1e-15));
    CHECK(g.vmax_abs() == doctest::Approx(15.0).epsilon(1e-15));
}

TEST_CASE("build_grid: freeflow nodes are cell centered") {
    const PhaseGrid g = build_grid({-1.0, 1.0}, 4, Boundary::freeflow, {-1.0, 1.0}, 2);
    REQUIRE(g.nx() == 4);
    CHECK(g.x_nodes[0] == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(g.x_nodes[1] == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(g.x_nodes[2] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.x_nodes[3] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("build_grid: rejects bad input") {
    CHECK_THROWS_AS(build_grid({0.0, 1.0}, 3, Boundary::periodic, {-1.0, 1.0}, 8), ConfigError);
    CHECK_THROWS_AS(build_grid({0.0, 1.0}, 8, Boundary::periodic, {-1.0, 1.0}, 1), ConfigError);
    CHECK_THROWS_AS(build_grid({1.0, 0.0}, 8, Boundary::periodic, {-1.0, 1.0}, 8), ConfigError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(build_grid({0.0, inf}, 8, Boundary::periodic, {-1.0, 1.0}, 8), ConfigError);
}

TEST_CASE("grid nesting: doubled periodic grids contain the coarse nodes exactly") {
    const PhaseGrid coarse = build_grid({-1.0, 1.0}, 50, Boundary::periodic, {-1.0, 1.0}, 4);
    const PhaseGrid fine = build_grid({-1.0, 1.0}, 100, Boundary::periodic, {-1.0, 1.0}, 4);
    for (int i = 0; i < 50; ++i) {
        CHECK(coarse.x_nodes[static_cast<std::size_t>(i)] ==
              fine.x_nodes[static_cast<std::size_t>(2 * i)]);
    }
}

TEST_CASE("shift_decompose basics") {
    const PhaseGrid g = build_grid({0.0, 1.0}, 10, Boundary::periodic, {-1.0, 1.0}, 4);
    SUBCASE("zero") {
        const FootIndex f = shift_decompose(g, 0.0);
        CHECK(f.base == 0);
        CHECK(f.theta == 0.0);
    }
    SUBCASE("half cell") {
        const FootIndex f = shift_decompose(g, 0.5 * g.dx);
        CHECK(f.base == 0);
        CHECK(f.theta == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("negative fraction floors") {
        const FootIndex f = shift_decompose(g, -0.3 * g.dx);
        CHECK(f.base == -1);
        CHECK(f.theta == doctest::Approx(0.7).epsilon(1e-12));
    }
}

TEST_CASE("shift_decompose recomposition stays within rounding") {
    const PhaseGrid g = build_grid({-1.0, 1.0}, 64, Boundary::periodic, {-1.0, 1.0}, 4);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-10.0 * g.dx, 10.0 * g.dx);
    for (int trial = 0; trial < 2000; ++trial) {
        const double delta = dist(rng);
        const FootIndex f = shift_decompose(g, delta);
        CHECK(f.theta >= 0.0);
        CHECK(f.theta < 1.0);
        const double recomposed = (static_cast<double>(f.base) + f.theta) * g.dx;
        CHECK(std::fabs(recomposed - delta) <= 4.0 * 2.2e-16 * 10.0 * g.dx);
    }
}

TEST_CASE("plan_steps lands exactly on segment ends") {
    const PhaseGrid g = build_grid({-1.0, 1.0}, 100, Boundary::periodic, {-15.0, 15.0}, 60);
    const double dt_nom = 2.0 * g.dx / 15.0;

    SUBCASE("fractional segment splits into equal shrunk steps") {
        const TimeControl tc = TimeControl::single(3.5 * dt_nom, 2.0);
        const auto plans = plan_steps(tc, g);
        REQUIRE(plans.size() == 1);
        CHECK(plans[0].steps == 4);
        CHECK(plans[0].dt == doctest::Approx(0.875 * dt_nom).epsilon(1e-14));
        CHECK(plans[0].steps * plans[0].dt == doctest::Approx(tc.t_final).epsilon(1e-14));
    }
    SUBCASE("exact multiple is preserved") {
        const TimeControl tc = TimeControl::single(5.0 * dt_nom, 2.0);
        const auto plans = plan_steps(tc, g);
        REQUIRE(plans.size() == 1);
        CHECK(plans[0].steps == 5);
        CHECK(plans[0].dt == doctest::Approx(dt_nom).epsilon(1e-14));
    }
    SUBCASE("two segments") {
        TimeControl tc;
        tc.t_final = 0.2;
        tc.schedule = {CflSegment{0.02, 0.2}, CflSegment{0.2, 2.0}};
        const auto plans = plan_steps(tc, g);
        REQUIRE(plans.size() == 2);
        CHECK(plans[0].t_begin == 0.0);
        CHECK(plans[0].steps * plans[0].dt == doctest::Approx(0.02).epsilon(1e-13));
        CHECK(plans[1].t_begin == doctest::Approx(0.02));
        CHECK(plans[1].steps * plans[1].dt == doctest::Approx(0.18).epsilon(1e-13));
    }
    SUBCASE("dt cap") {
        TimeControl tc = TimeControl::single(1.0, 2.0);
        tc.dt_cap = 0.25 * dt_nom;
        const auto plans = plan_steps(tc, g);
        CHECK(plans[0].dt <= 0.25 * dt_nom * (1.0 + 1e-12));
    }
}

TEST_CASE("TimeControl validation") {
    TimeControl tc;
    tc.t_final = 1.0;
    SUBCASE("empty schedule") { CHECK_THROWS_AS(tc.validate(), ConfigError); }
    SUBCASE("nonpositive cfl") {
        tc.schedule = {CflSegment{1.0, 0.0}};
        CHECK_THROWS_AS(tc.validate(), ConfigError);
    }
    SUBCASE("uncovered tail") {
        tc.schedule = {CflSegment{0.5, 1.0}};
        CHECK_THROWS_AS(tc.validate(), ConfigError);
    }
    SUBCASE("non-monotone") {
        tc.schedule = {CflSegment{0.7, 1.0}, CflSegment{0.6, 1.0}, CflSegment{1.0, 1.0}};
        CHECK_THROWS_AS(tc.validate(), ConfigError);
    }
}
