// Acceptance gate: one self-contained check per shipped guarantee, each
// printed as a single PASS/FAIL line.  Exit status is the number of failures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "shc/shc.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace shc;
namespace fs = std::filesystem;

namespace {

constexpr double kOracleTolerance = 1e-9;
constexpr double kRegionHalfWidth = 0.1;
constexpr int kGridSize = 50;
constexpr int kFloorSearchCap = 30;
constexpr int kFloorBound = 8;
constexpr int kPlanLength = 100;
constexpr double kFinalExponentBound = 0.04;
constexpr double kTailOffsetBound = 1e-6;
constexpr int kTailStart = 40; // 1-indexed plan step where the tail bound kicks in
constexpr double kBudgetIdentityTolerance = 1e-12;
constexpr double kFinalBudgetBound = 0.05;
constexpr double kBumpWidth = 0.05;
constexpr int kBumpZeros = 1000;
constexpr double kBumpEpsilon = 0.01;

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("%s %2d %-34s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

void run(int id, const char* name, bool (*check)(std::string&)) {
    std::string detail;
    bool ok = false;
    try {
        ok = check(detail);
    } catch (const std::exception& e) {
        detail = std::string("unexpected exception: ") + e.what();
    }
    report(id, name, ok, detail);
}

double relative_gap(const Vector<double>& a, const Vector<double>& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

// 1. The closed-form solver and the brute-force return-map oracle agree on
//    the reference cycle and on randomly drawn cycles.
bool check_oracle_equivalence(std::string& detail) {
    double worst = 0.0;
    auto compare = [&](const SHSimpleCycle& cycle, const LoopParams& p) {
        PeriodicSolution sol = solve_loop(cycle, p);
        Vector<double> closed = solution_start_point(cycle, sol);
        Vector<double> oracle = fixed_point(loop_return_map(cycle, Itinerary{{p}}));
        worst = std::max(worst, relative_gap(closed, oracle));
    };

    SHSimpleCycle reference = test::c0();
    for (int m1 = 1; m1 <= 20; ++m1)
        for (int m2 = 1; m2 <= 6; ++m2) compare(reference, {m1, m2});

    std::mt19937 rng(20260814);
    for (int c = 0; c < 100; ++c) {
        SHSimpleCycle cycle = test::random_cycle(rng);
        for (int l = 0; l < 20; ++l) compare(cycle, test::solvable_loop(rng, cycle));
    }

    std::ostringstream os;
    os << "worst relative gap " << worst << " (tolerance " << kOracleTolerance << ")";
    detail = os.str();
    return worst <= kOracleTolerance;
}

// 2. Whenever the loop multiplier clears the realizability threshold, the
//    center coordinate of the solution stays inside the transition region.
bool check_realizability_containment(std::string& detail) {
    SHSimpleCycle cycle = test::c0();
    double threshold = realizability_threshold(cycle);
    if (threshold != 6.0) {
        detail = "threshold is not the expected 6";
        return false;
    }
    int realizable = 0, counterexamples = 0;
    for (int m1 = 1; m1 <= kGridSize; ++m1)
        for (int m2 = 1; m2 <= kGridSize; ++m2) {
            PeriodicSolution sol = solve_loop(cycle, {m1, m2});
            if (sol.loop_multiplier <= threshold) continue;
            ++realizable;
            if (std::abs(sol.center_offset) > kRegionHalfWidth) ++counterexamples;
        }
    std::ostringstream os;
    os << realizable << " loops above threshold on the " << kGridSize << "x" << kGridSize
       << " grid, " << counterexamples << " counterexamples";
    detail = os.str();
    return realizable > 0 && counterexamples == 0;
}

// 3. Some uniform floor M0 makes every analytically realizable loop with
//    m1, m2 >= M0 pass the orbit trace, and it shows up well below the bound.
bool check_uniform_floor(std::string& detail) {
    SHSimpleCycle cycle = test::c0();
    int deepest = 0;
    for (int m1 = 1; m1 <= kFloorSearchCap; ++m1)
        for (int m2 = 1; m2 <= kFloorSearchCap; ++m2) {
            PeriodicSolution sol = solve_loop(cycle, {m1, m2});
            if (!sol.analytic_realizable) continue;
            VerificationReport check = verify_solution(cycle, sol);
            if (!check.empirical_realizable) deepest = std::max(deepest, std::min(m1, m2));
        }
    int measured = deepest + 1;
    std::ostringstream os;
    os << "measured floor " << measured << " within search cap " << kFloorSearchCap
       << " (bound " << kFloorBound << ")";
    detail = os.str();
    return measured <= kFloorBound;
}

ExhaustionPlan& shared_plan() {
    static ExhaustionPlan plan = plan_exhaustion(test::c0(), interval_defaults(test::c0(), kPlanLength));
    return plan;
}

// 4. The hundred-step plan walks consecutive periods, every step passes the
//    oracle, exponents respect the corridor bound and end below 0.04.
bool check_plan_exhaustion(std::string& detail) {
    ExhaustionPlan& plan = shared_plan();
    if (static_cast<int>(plan.steps.size()) != kPlanLength) {
        detail = "plan is not 100 steps";
        return false;
    }
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        const PeriodicSolution& sol = plan.steps[i];
        if (sol.period != plan.first_period + static_cast<int>(i)) {
            detail = "periods are not consecutive at step " + std::to_string(i);
            return false;
        }
        if (!plan.checks[i].empirical_realizable) {
            detail = "oracle rejected step " + std::to_string(i) + ": " + plan.checks[i].failure;
            return false;
        }
        if (sol.center_exponent > plan.config.corridor_high / sol.period + 1e-12) {
            detail = "exponent exceeds corridor bound at step " + std::to_string(i);
            return false;
        }
    }
    double final_exponent = plan.steps.back().center_exponent;
    std::ostringstream os;
    os << "periods " << plan.first_period << ".." << plan.steps.back().period
       << ", final exponent " << final_exponent;
    detail = os.str();
    return final_exponent < kFinalExponentBound;
}

// 5. The planned solutions are pairwise distinct and their hyperbolic
//    offsets collapse once the plan is deep enough.
bool check_separation(std::string& detail) {
    ExhaustionPlan& plan = shared_plan();
    SeparationReport separation = separation_report(plan);
    if (!separation.all_distinct || !(separation.min_pairwise_distance > 0.0)) {
        detail = "planned solutions are not pairwise distinct";
        return false;
    }
    double worst_tail = 0.0;
    for (size_t i = kTailStart - 1; i < plan.steps.size(); ++i) {
        const PeriodicSolution& sol = plan.steps[i];
        double offset = std::hypot(norm(sol.stable_offset), norm(sol.unstable_offset));
        worst_tail = std::max(worst_tail, offset);
    }
    std::ostringstream os;
    os << "min pairwise distance " << separation.min_pairwise_distance
       << ", worst tail offset " << worst_tail;
    detail = os.str();
    return worst_tail < kTailOffsetBound;
}

// 6. Flattening each planned orbit's center cocycle costs exactly the
//    closed-form budget, and the cost drops below 0.05 by the end.
bool check_flattening_budgets(std::string& detail) {
    ExhaustionPlan& plan = shared_plan();
    SHSimpleCycle cycle = test::c0();
    double worst_identity = 0.0;
    for (const PeriodicSolution& sol : plan.steps) {
        CocycleAdjustment adj = zero_center_exponent(orbit_center_cocycle(cycle, sol), 1.0);
        double expected = std::abs(std::exp(-sol.center_exponent) - 1.0);
        worst_identity = std::max(worst_identity, std::abs(adj.epsilon_used - expected));
    }
    CocycleAdjustment last =
        zero_center_exponent(orbit_center_cocycle(cycle, plan.steps.back()), 1.0);
    std::ostringstream os;
    os << "worst identity gap " << worst_identity << ", final budget " << last.epsilon_used;
    detail = os.str();
    return worst_identity <= kBudgetIdentityTolerance && last.epsilon_used < kFinalBudgetBound;
}

// 7. A single C1-small bump spawns at least the requested number of interior
//    fixed points without leaving its support or its derivative bound.
bool check_bump_spawning(std::string& detail) {
    CenterBumpPerturbation bump = spawn_center_fixed_points(kBumpWidth, kBumpZeros, kBumpEpsilon);
    int crossings = count_fixed_points(bump, bump.width() / (8.0 * bump.frequency));

    double sup_derivative = 0.0;
    const int samples = 400000;
    for (int i = 0; i <= samples; ++i) {
        double y = bump.support_lo + i * (bump.width() / samples);
        sup_derivative = std::max(sup_derivative, std::abs(bump.derivative(y)));
    }
    bool contained = bump(bump.support_lo) == 0.0 && bump(bump.support_hi) == 0.0 &&
                     bump(bump.support_lo - 1e-12) == 0.0 && bump(bump.support_hi + 1e-12) == 0.0 &&
                     bump(bump.support_lo - 10.0) == 0.0 && bump(bump.support_hi + 10.0) == 0.0;

    std::ostringstream os;
    os << crossings << " sign changes, sampled sup|h'| " << sup_derivative
       << (contained ? ", support respected" : ", support violated");
    detail = os.str();
    return crossings >= kBumpZeros && sup_derivative <= kBumpEpsilon && contained;
}

// 8. Prescribing j * j! periodic points makes every exponential comparison
//    ratio strictly increasing, for all three reference bases.
bool check_factorial_divergence(std::string& detail) {
    GrowthTable table;
    BigInt factorial = 1;
    for (int j = 2; j <= 40; ++j) {
        factorial *= j;
        if (j >= 16) table.counts[j] = BigInt(j) * factorial;
    }
    GrowthReport report = growth_report(table, {2.0, 5.0, 10.0});
    for (const GrowthSeries& series : report.series) {
        if (!series.divergence) {
            detail = "series flagged non-divergent";
            return false;
        }
        for (size_t i = 1; i < series.ratios.size(); ++i)
            if (!(series.ratios[i] > series.ratios[i - 1])) {
                std::ostringstream os;
                os << "ratio not strictly increasing at base " << series.base << ", index " << i;
                detail = os.str();
                return false;
            }
    }
    detail = "ratios strictly increasing for bases 2, 5, 10 over periods 16..40";
    return true;
}

// 9. The census is internally consistent: deeper excursion search only adds
//    itineraries, and the count table is always period times orbit count.
bool check_census_consistency(std::string& detail) {
    SHSimpleCycle cycle = test::c0();
    auto itinerary_key = [](const PeriodicPoint& p) {
        std::vector<int> key;
        for (const LoopParams& lp : p.itinerary.loops) {
            key.push_back(lp.m1);
            key.push_back(lp.m2);
        }
        return key;
    };
    GrowthTable single = count_table(cycle, 16, 22, 1);
    GrowthTable twofold = count_table(cycle, 16, 22, 2);
    for (int n = 16; n <= 22; ++n) {
        auto one = enumerate_periodic_points(cycle, n, 1);
        auto two = enumerate_periodic_points(cycle, n, 2);
        std::set<std::vector<int>> deeper;
        for (const PeriodicPoint& p : two) deeper.insert(itinerary_key(p));
        for (const PeriodicPoint& p : one)
            if (!deeper.count(itinerary_key(p))) {
                detail = "single-loop orbit missing from the deeper census at period " +
                         std::to_string(n);
                return false;
            }
        if (single.counts.at(n) != BigInt(n) * static_cast<long>(one.size()) ||
            twofold.counts.at(n) != BigInt(n) * static_cast<long>(two.size())) {
            detail = "count table is not period times orbit count at period " + std::to_string(n);
            return false;
        }
    }
    std::ostringstream os;
    os << "periods 16..22, single-loop counts " << single.counts.at(16).str() << ".."
       << single.counts.at(22).str();
    detail = os.str();
    return true;
}

// 10. The command-line pipeline is byte-deterministic: reruns into fresh
//     directories, with different thread settings, produce identical files.
bool check_cli_determinism(std::string& detail) {
    fs::path root = fs::absolute("acceptance_io");
    fs::remove_all(root);
    fs::create_directories(root);
    std::string config = std::string(SHC_SOURCE_DIR) + "/fixtures/c0.json";

    auto invoke = [&](const std::string& dir, const std::string& threads,
                      const std::string& rest) -> bool {
        fs::create_directories(root / dir);
        std::ostringstream cmd;
        cmd << '"' << SHC_CLI_PATH << "\" --config \"" << config << "\" --out \""
            << (root / dir).string() << '"' << threads << ' ' << rest << " > /dev/null 2>&1";
        int raw = std::system(cmd.str().c_str());
        return raw != -1 && WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
    };
    auto slurp = [](const fs::path& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };

    struct Job {
        const char* name;
        const char* rest;
    };
    const std::vector<Job> jobs = {
        {"plan", "plan --count 25"},
        {"census", "census --nmin 16 --nmax 19"},
        {"report", "report --seq factorial --jmin 16 --jmax 30 --r 2,5,10"},
    };
    for (const Job& job : jobs) {
        std::string first = std::string(job.name) + "_a";
        std::string second = std::string(job.name) + "_b";
        if (!invoke(first, "", job.rest) || !invoke(second, " --threads 5", job.rest)) {
            detail = std::string("cli run failed for ") + job.rest;
            return false;
        }
        for (const char* ext : {".json", ".csv"}) {
            std::string a = slurp(root / first / (std::string(job.name) + ext));
            std::string b = slurp(root / second / (std::string(job.name) + ext));
            if (a.empty() || a != b) {
                detail = std::string(job.name) + ext + " differs between reruns";
                return false;
            }
        }
    }
    detail = "plan, census and report byte-identical across reruns and thread counts";
    return true;
}

} // namespace

int main() {
    run(1, "closed-form vs oracle", check_oracle_equivalence);
    run(2, "realizability containment", check_realizability_containment);
    run(3, "uniform realizability floor", check_uniform_floor);
    run(4, "consecutive-period plan", check_plan_exhaustion);
    run(5, "solution separation", check_separation);
    run(6, "flattening budgets", check_flattening_budgets);
    run(7, "bump spawning", check_bump_spawning);
    run(8, "factorial divergence", check_factorial_divergence);
    run(9, "census consistency", check_census_consistency);
    run(10, "cli determinism", check_cli_determinism);

    std::printf("%d of 10 checks passed\n", 10 - g_failures);
    return g_failures;
}
