#include <catch2/catch_amalgamated.hpp>

#include "shc/shc.hpp"
#include "support/fixtures.hpp"

using namespace shc;
using Catch::Approx;

// Exact values for the reference cycle at (m1, m2) = (10, 4), derived by hand
// from the per-block return equations and kept as literal rationals:
//   center:   y = q1 / (s - 1),           s = 2^10 / 3^4
//   stable:   x = n / d with n, d expanded below
//   unstable: z = q2 / (M2^4 Mt1 - Mt2^-1 M1^-10)
namespace {
const Rational kLoopMultiplier104(1024, 81);
const Rational kCenter104(81, 1886);
const Rational kStable104(3843072, 122070307380);
const Rational kUnstable104(87890625, 56249999990);
} // namespace

TEST_CASE("loop period and center multiplier") {
    SHSimpleCycle cycle = test::c0();
    REQUIRE(loop_period(cycle, {10, 4}) == 16);
    REQUIRE(loop_period(cycle, {9, 4}) == 15);
    REQUIRE(loop_center_multiplier(cycle, {10, 4}) == Approx(to_double(kLoopMultiplier104)));
    REQUIRE_THROWS_AS(loop_period(cycle, {0, 4}), InvalidInputError);

    SHSimpleCycle longer = cycle;
    longer.t1.steps = 3;
    longer.t2.steps = 2;
    REQUIRE(loop_period(longer, {10, 4}) == 19);
}

TEST_CASE("closed-form solution at (10, 4) matches the hand derivation") {
    PeriodicSolution sol = solve_loop(test::c0(), {10, 4});
    REQUIRE(sol.period == 16);
    REQUIRE(sol.loop_multiplier == Approx(to_double(kLoopMultiplier104)).epsilon(1e-14));
    REQUIRE(sol.center_offset == Approx(to_double(kCenter104)).epsilon(1e-14));
    REQUIRE(sol.stable_offset.size() == 1);
    REQUIRE(sol.stable_offset[0] == Approx(to_double(kStable104)).epsilon(1e-12));
    REQUIRE(sol.unstable_offset.size() == 1);
    REQUIRE(sol.unstable_offset[0] == Approx(to_double(kUnstable104)).epsilon(1e-12));
    REQUIRE(sol.center_exponent == Approx(0.15856391568293838).epsilon(1e-13));
    REQUIRE(sol.analytic_realizable);

    Vector<double> start = solution_start_point(test::c0(), sol);
    REQUIRE(start.size() == 3);
    REQUIRE(start[0] == sol.stable_offset[0]);
    REQUIRE(start[1] == Approx(0.5 + sol.center_offset));
    REQUIRE(start[2] == sol.unstable_offset[0]);
}

TEST_CASE("the generic solver over exact rationals reproduces the literals") {
    BasicCycle<Rational> cycle = test::c0_rational();
    REQUIRE(center_solution(cycle, {10, 4}) == kCenter104);
    Vector<Rational> x = stable_solution(cycle, {10, 4});
    REQUIRE(x.size() == 1);
    REQUIRE(x[0] == kStable104);
    Vector<Rational> z = unstable_solution(cycle, {10, 4});
    REQUIRE(z.size() == 1);
    REQUIRE(z[0] == kUnstable104);
}

TEST_CASE("center equation degenerates exactly at resonance") {
    SHSimpleCycle cycle = test::c0_resonant();
    REQUIRE_THROWS_AS(center_solution(cycle, LoopParams{4, 4}), ResonanceError);
    REQUIRE_THROWS_AS(solve_loop(cycle, {4, 4}), ResonanceError);
    REQUIRE_NOTHROW(solve_loop(cycle, {5, 4}));
}

TEST_CASE("degenerate block systems name the failing block") {
    SHSimpleCycle cycle = test::c0();
    SECTION("stable") {
        cycle.p1.stable = Matrix<double>{{2.0}};
        cycle.p2.stable = Matrix<double>{{1.0}};
        cycle.t1.stable = Matrix<double>{{1.0}};
        cycle.t2.stable = Matrix<double>{{0.5}};
        try {
            stable_solution(cycle, {1, 1});
            FAIL("expected a degenerate-loop error");
        } catch (const DegenerateLoopError& e) {
            REQUIRE(e.block() == "stable");
        }
    }
    SECTION("unstable") {
        cycle.p1.unstable = Matrix<double>{{4.0}};
        cycle.p2.unstable = Matrix<double>{{1.0}};
        cycle.t1.unstable = Matrix<double>{{0.25}};
        cycle.t2.unstable = Matrix<double>{{1.0}};
        try {
            unstable_solution(cycle, {1, 1});
            FAIL("expected a degenerate-loop error");
        } catch (const DegenerateLoopError& e) {
            REQUIRE(e.block() == "unstable");
        }
    }
}

TEST_CASE("realizability threshold separates small center offsets") {
    SHSimpleCycle cycle = test::c0();
    REQUIRE(realizability_threshold(cycle) == Approx(6.0));

    SECTION("the flag is exactly the threshold comparison") {
        for (int m1 = 1; m1 <= 14; ++m1)
            for (int m2 = 1; m2 <= 8; ++m2) {
                PeriodicSolution sol = solve_loop(cycle, {m1, m2});
                REQUIRE(sol.analytic_realizable == (sol.loop_multiplier > 6.0));
            }
    }
    SECTION("above the threshold the center offset fits in the region") {
        for (int m1 = 1; m1 <= 25; ++m1)
            for (int m2 = 1; m2 <= 25; ++m2) {
                PeriodicSolution sol = solve_loop(cycle, {m1, m2});
                if (sol.analytic_realizable)
                    REQUIRE(std::abs(sol.center_offset) <= cycle.t1.region.center);
            }
    }
    SECTION("specific pairs") {
        REQUIRE(solve_loop(cycle, {9, 4}).analytic_realizable);
        REQUIRE_FALSE(solve_loop(cycle, {8, 4}).analytic_realizable);
        REQUIRE_FALSE(solve_loop(cycle, {4, 9}).analytic_realizable);
    }
}

TEST_CASE("center exponent averages the multiplier logs") {
    SHSimpleCycle cycle = test::c0();
    PeriodicSolution sol = solve_loop(cycle, {9, 4});
    double expected = (9 * std::log(2.0) + 4 * std::log(1.0 / 3.0)) / 15.0;
    REQUIRE(sol.center_exponent == Approx(expected).epsilon(1e-14));
    REQUIRE(sol.center_exponent == Approx(std::log(sol.loop_multiplier) / sol.period).epsilon(1e-12));
}

TEST_CASE("center offsets shrink as the multiplier grows") {
    SHSimpleCycle cycle = test::c0();
    double previous = std::abs(solve_loop(cycle, {9, 4}).center_offset);
    for (int m1 = 10; m1 <= 20; ++m1) {
        double current = std::abs(solve_loop(cycle, {m1, 4}).center_offset);
        REQUIRE(current < previous);
        previous = current;
    }
}
