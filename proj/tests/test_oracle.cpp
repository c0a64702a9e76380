#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "shc/shc.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace shc;
using Catch::Approx;

namespace {

std::vector<LoopParams> single_loops(const std::vector<PeriodicPoint>& points) {
    std::vector<LoopParams> loops;
    for (const PeriodicPoint& p : points) {
        REQUIRE(p.itinerary.loops.size() == 1);
        loops.push_back(p.itinerary.loops.front());
    }
    return loops;
}

} // namespace

TEST_CASE("affine block maps compose like the underlying maps") {
    std::mt19937 rng(20240811);
    SHSimpleCycle cycle = test::random_cycle(rng);
    AffineBlockMap<double> f = transition_map(cycle.t1);
    AffineBlockMap<double> g = chart_iterates_map(cycle.p2, 3);
    Vector<double> p = make_point(test::random_direction(rng, cycle.index.stable_dim, 0.3), 0.2,
                                  test::random_direction(rng, cycle.index.unstable_dim, 0.1));
    Vector<double> direct = g(f(p));
    Vector<double> composed = compose(g, f)(p);
    for (size_t i = 0; i < direct.size(); ++i)
        REQUIRE(composed[i] == Approx(direct[i]).margin(1e-12));

    AffineBlockMap<double> id = identity_block_map<double>(cycle.index);
    Vector<double> same = compose(id, f)(p);
    Vector<double> expected = f(p);
    for (size_t i = 0; i < same.size(); ++i) REQUIRE(same[i] == Approx(expected[i]).margin(1e-15));
}

TEST_CASE("chart iterates are repeated single steps") {
    SHSimpleCycle cycle = test::c0();
    Vector<double> p = make_point({0.5}, 0.01, {0.001});
    Vector<double> once = p;
    for (int i = 0; i < 4; ++i)
        once = make_point({0.2 * stable_block(once, cycle.index)[0]},
                          center_block(once, cycle.index) / 3.0,
                          {4.0 * unstable_block(once, cycle.index)[0]});
    Vector<double> mapped = chart_iterates_map(cycle.p2, 4)(p);
    for (size_t i = 0; i < 3; ++i) REQUIRE(mapped[i] == Approx(once[i]).epsilon(1e-14));
    REQUIRE_THROWS_AS(chart_iterates_map(cycle.p2, -1), InvalidInputError);
}

TEST_CASE("transition maps carry the source anchor to the target anchor") {
    SHSimpleCycle cycle = test::c0();
    Vector<double> image = transition_map(cycle.t1)(cycle.t1.source_anchor);
    for (size_t i = 0; i < image.size(); ++i)
        REQUIRE(image[i] == Approx(cycle.t1.target_anchor[i]).margin(1e-15));
    image = transition_map(cycle.t2)(cycle.t2.source_anchor);
    for (size_t i = 0; i < image.size(); ++i)
        REQUIRE(image[i] == Approx(cycle.t2.target_anchor[i]).margin(1e-15));
}

TEST_CASE("guarded steps throw region errors naming the block") {
    SHSimpleCycle cycle = test::c0();
    try {
        local_step(cycle.p1, make_point({0.0}, 0.0, {1.5}));
        FAIL("expected a region error");
    } catch (const RegionError& e) {
        REQUIRE(e.block() == "unstable");
    }
    try {
        local_step(cycle.p1, make_point({0.0}, 0.6, {0.0}));
        FAIL("expected a region error for the image");
    } catch (const RegionError& e) {
        REQUIRE(e.block() == "center");
    }
    try {
        transition_step(cycle.t1, make_point({0.0}, 0.25, {0.0}));
        FAIL("expected a region error");
    } catch (const RegionError& e) {
        REQUIRE(e.block() == "center");
    }
    REQUIRE_NOTHROW(local_step(cycle.p2, make_point({0.2}, 0.9, {0.1})));
}

TEST_CASE("brute-force fixed point equals the closed form exactly over rationals") {
    BasicCycle<Rational> cycle = test::c0_rational();
    Itinerary loop{{LoopParams{10, 4}}};
    Vector<Rational> fp = fixed_point(loop_return_map(cycle, loop));
    REQUIRE(fp[0] == Rational(320256, 10172525615));
    REQUIRE(fp[1] == Rational(512, 943));
    REQUIRE(fp[2] == Rational(17578125, 11249999998));
    REQUIRE(fp[1] == Rational(1, 2) + center_solution(cycle, {10, 4}));
    REQUIRE(fp[0] == stable_solution(cycle, {10, 4})[0]);
    REQUIRE(fp[2] == unstable_solution(cycle, {10, 4})[0]);
}

TEST_CASE("closed form matches the oracle across a parameter grid") {
    SHSimpleCycle cycle = test::c0();
    for (int m1 = 1; m1 <= 14; ++m1)
        for (int m2 = 1; m2 <= 6; ++m2) {
            PeriodicSolution sol = solve_loop(cycle, {m1, m2});
            VerificationReport check = verify_solution(cycle, sol);
            CAPTURE(m1, m2, check.max_component_error);
            REQUIRE(check.max_component_error <= 1e-9);
        }
}

TEST_CASE("closed form matches the oracle on randomized cycles") {
    std::mt19937 rng(7);
    for (int i = 0; i < 10; ++i) {
        SHSimpleCycle cycle = test::random_cycle(rng);
        REQUIRE(validate_cycle(cycle).passed());
        for (int k = 0; k < 5; ++k) {
            LoopParams p = test::solvable_loop(rng, cycle);
            VerificationReport check = verify_solution(cycle, solve_loop(cycle, p));
            CAPTURE(i, k, p.m1, p.m2, check.max_component_error);
            REQUIRE(check.max_component_error <= 1e-9);
        }
    }
}

TEST_CASE("fixed point solves small affine systems and flags resonance") {
    CycleIndex ix{1, 1};
    AffineBlockMap<double> map = identity_block_map<double>(ix);
    map.stable_linear = Matrix<double>{{0.5}};
    map.stable_offset = {1.0};
    map.center_linear = 2.0;
    map.center_offset = -1.0;
    map.unstable_linear = Matrix<double>{{4.0}};
    map.unstable_offset = {6.0};
    Vector<double> fp = fixed_point(map);
    REQUIRE(fp[0] == Approx(2.0));
    REQUIRE(fp[1] == Approx(1.0));
    REQUIRE(fp[2] == Approx(-2.0));

    map.center_linear = 1.0;
    REQUIRE_THROWS_AS(fixed_point(map), ResonanceError);
}

TEST_CASE("orbit trace walks the full itinerary and closes up") {
    SHSimpleCycle cycle = test::c0();
    PeriodicSolution sol = solve_loop(cycle, {10, 4});
    Itinerary loop{{sol.params}};
    OrbitTrace<double> trace = trace_orbit(cycle, loop, solution_start_point(cycle, sol));
    REQUIRE(trace.all_valid);
    REQUIRE(trace.first_violation.empty());
    REQUIRE(trace.points.size() == 17);
    REQUIRE(trace.points.front().step == 0);
    REQUIRE(trace.points.back().step == 16);
    for (size_t i = 0; i < 3; ++i)
        REQUIRE(trace.points.back().point[i] ==
                Approx(trace.points.front().point[i]).margin(1e-12));
}

TEST_CASE("orbit trace records the first violation and stops") {
    SHSimpleCycle cycle = test::c0();
    Itinerary loop{{LoopParams{10, 4}}};
    OrbitTrace<double> trace = trace_orbit(cycle, loop, make_point({0.0}, 0.25, {0.0}));
    REQUIRE_FALSE(trace.all_valid);
    REQUIRE(trace.first_violation.find("center") != std::string::npos);
    REQUIRE(trace.points.size() == 1);
}

TEST_CASE("verification separates analytic from empirical realizability") {
    SHSimpleCycle cycle = test::c0();
    SECTION("a planned orbit passes everything") {
        VerificationReport check = verify_solution(cycle, solve_loop(cycle, {10, 4}));
        REQUIRE(check.trace_all_valid);
        REQUIRE(check.empirical_realizable);
        REQUIRE(check.failure.empty());
        // closure of a forward trace is limited by the loop's expansion
        // (about 5e9 here) times the rounding of the start point
        REQUIRE(check.periodicity_error <= 1e-8);
    }
    SECTION("analytic realizability does not guarantee a valid trace") {
        PeriodicSolution sol = solve_loop(cycle, {13, 1});
        REQUIRE(sol.analytic_realizable);
        VerificationReport check = verify_solution(cycle, sol);
        REQUIRE_FALSE(check.empirical_realizable);
        REQUIRE_FALSE(check.failure.empty());
    }
    SECTION("an unrealizable center offset fails the trace at the start") {
        PeriodicSolution sol = solve_loop(cycle, {8, 4});
        REQUIRE_FALSE(sol.analytic_realizable);
        VerificationReport check = verify_solution(cycle, sol);
        REQUIRE_FALSE(check.empirical_realizable);
    }
}

TEST_CASE("enumeration finds exactly the realizable single loops") {
    SHSimpleCycle cycle = test::c0();
    SECTION("period 16") {
        auto points = enumerate_periodic_points(cycle, 16, 1);
        REQUIRE(single_loops(points) ==
                std::vector<LoopParams>{{10, 4}, {11, 3}, {12, 2}});
    }
    SECTION("period 15") {
        auto points = enumerate_periodic_points(cycle, 15, 1);
        REQUIRE(single_loops(points) == std::vector<LoopParams>{{9, 4}, {10, 3}, {11, 2}});
    }
    SECTION("period 18 gains a fourth orbit") {
        auto points = enumerate_periodic_points(cycle, 18, 1);
        REQUIRE(single_loops(points) ==
                std::vector<LoopParams>{{11, 5}, {12, 4}, {13, 3}, {14, 2}});
    }
    SECTION("every returned point traces cleanly") {
        for (const PeriodicPoint& p : enumerate_periodic_points(cycle, 16, 1)) {
            OrbitTrace<double> trace = trace_orbit(cycle, p.itinerary, p.point);
            REQUIRE(trace.all_valid);
        }
    }
}

TEST_CASE("multi-loop enumeration is a superset that stays canonical") {
    SHSimpleCycle cycle = test::c0();
    for (int n = 16; n <= 20; ++n) {
        auto one = enumerate_periodic_points(cycle, n, 1);
        auto two = enumerate_periodic_points(cycle, n, 2);
        REQUIRE(two.size() >= one.size());
        // every single-loop itinerary appears again, and nothing repeats
        size_t singles = 0;
        for (const PeriodicPoint& p : two) {
            if (p.itinerary.loops.size() == 1) ++singles;
            REQUIRE(itinerary_period(cycle, p.itinerary) == n);
        }
        REQUIRE(singles == one.size());
        for (size_t i = 1; i < two.size(); ++i)
            REQUIRE(detail::flattened_less(two[i - 1].itinerary.loops, two[i].itinerary.loops));
    }
}

TEST_CASE("rotations and repetitions are not double counted") {
    SHSimpleCycle cycle = test::c0();
    // period 32 with two loops includes pairs like (10,4)+(11,3) in only one
    // rotation, and never the repeated (10,4)+(10,4), whose primitive period
    // is 16
    auto points = enumerate_periodic_points(cycle, 32, 2);
    for (const PeriodicPoint& p : points) {
        if (p.itinerary.loops.size() != 2) continue;
        REQUIRE_FALSE(p.itinerary.loops[0] == p.itinerary.loops[1]);
        REQUIRE_FALSE(detail::flattened_less(
            std::vector<LoopParams>{p.itinerary.loops[1], p.itinerary.loops[0]},
            p.itinerary.loops));
    }
}

TEST_CASE("count table multiplies orbits by their period") {
    SHSimpleCycle cycle = test::c0();
    GrowthTable table = count_table(cycle, 15, 18, 1);
    REQUIRE(table.counts.at(15) == 45);
    REQUIRE(table.counts.at(16) == 48);
    REQUIRE(table.counts.at(17) == 51);
    REQUIRE(table.counts.at(18) == 72);
    for (int n = 15; n <= 18; ++n)
        REQUIRE(table.counts.at(n) ==
                BigInt(n) * static_cast<long>(enumerate_periodic_points(cycle, n, 1).size()));
    REQUIRE_THROWS_AS(count_table(cycle, 10, 9, 1), InvalidInputError);
}

TEST_CASE("periods too short for the transitions have no orbits") {
    SHSimpleCycle cycle = test::c0();
    REQUIRE(enumerate_periodic_points(cycle, 3, 1).empty());
    REQUIRE(count_table(cycle, 1, 3, 1).counts.at(2) == 0);
}

TEST_CASE("the enumeration budget is enforced up front") {
    SHSimpleCycle cycle = test::c0();
    try {
        enumerate_periodic_points(cycle, 16, 2, 10);
        FAIL("expected a budget error");
    } catch (const BudgetExceededError& e) {
        REQUIRE(e.budget() == 10);
        REQUIRE(e.required() > 10);
    }
    REQUIRE_NOTHROW(enumerate_periodic_points(cycle, 16, 1, 13));
}
