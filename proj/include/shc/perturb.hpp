#pragma once

// Perturbation bookkeeping: how cheaply each planned orbit's center
// expansion can be cancelled, and how many new periodic points a localized
// center bump can spawn once it is.
//
// The two halves are deliberately different in kind.  Cancelling the center
// exponent is a linear-algebra fact about derivative cocycles, so it is
// computed honestly from the orbit's multipliers.  Spawning is a C1-small
// scalar bump whose oscillations create sign-change fixed points; it is
// constructed and counted at desk scale here, while the census arithmetic
// for prescribed super-exponential sequences is exact integer bookkeeping.

#include <algorithm>
#include <cmath>

#include "shc/growth.hpp"
#include "shc/planner.hpp"

namespace shc {

/// Per-iterate center derivatives along one periodic orbit, listed in the
/// fixed representation: the expanding-chart visits first, one entry per
/// ambient iterate (transitions contribute exactly 1 per iterate).
struct CenterCocycle {
    std::vector<double> multipliers;

    int period() const { return static_cast<int>(multipliers.size()); }

    double product() const {
        double p = 1.0;
        for (double m : multipliers) p *= m;
        return p;
    }
};

/// Reads the center derivative of every iterate off a solved loop.
inline CenterCocycle orbit_center_cocycle(const SHSimpleCycle& cycle, const PeriodicSolution& sol) {
    detail::require_loop_params(sol.params);
    if (cycle.t1.steps < 1 || cycle.t2.steps < 1)
        throw InvalidInputError("orbit_center_cocycle: transitions must represent at least one iterate");
    CenterCocycle cocycle;
    cocycle.multipliers.reserve(static_cast<size_t>(sol.period));
    cocycle.multipliers.insert(cocycle.multipliers.end(), sol.params.m1, cycle.p1.center);
    cocycle.multipliers.insert(cocycle.multipliers.end(), cycle.t1.steps, 1.0);
    cocycle.multipliers.insert(cocycle.multipliers.end(), sol.params.m2, cycle.p2.center);
    cocycle.multipliers.insert(cocycle.multipliers.end(), cycle.t2.steps, 1.0);
    return cocycle;
}

/// Per-iterate factors that multiply into the cocycle to make its product
/// exactly one, plus the C1 budget they consumed.
struct CocycleAdjustment {
    std::vector<double> factors;
    double epsilon_used = 0.0;
};

/// Flattens the cocycle's product to 1 by scaling every iterate with the
/// same factor c = product^(-1/period).  Each per-iterate derivative moves
/// by |c - 1| relative, which is exactly the C1 budget such a change needs;
/// if that exceeds `epsilon` the adjustment is refused and the required
/// budget reported.
inline CocycleAdjustment zero_center_exponent(const CenterCocycle& cocycle, double epsilon) {
    if (cocycle.multipliers.empty())
        throw InvalidInputError("zero_center_exponent: empty cocycle");
    for (double m : cocycle.multipliers)
        if (!(m > 0.0) || !std::isfinite(m))
            throw InvalidInputError("zero_center_exponent: multipliers must be positive and finite");
    if (!(epsilon >= 0.0)) throw InvalidInputError("zero_center_exponent: negative budget");

    double product = cocycle.product();
    double c = std::exp(-std::log(product) / cocycle.period());
    double required = std::abs(c - 1.0);
    if (required > epsilon)
        throw PerturbationBudgetError(
            "zero_center_exponent: flattening needs C1 budget " + std::to_string(required) +
                " > " + std::to_string(epsilon),
            required);
    CocycleAdjustment adj;
    adj.factors.assign(cocycle.multipliers.size(), c);
    adj.epsilon_used = required;
    return adj;
}

/// A compactly supported C1 bump for the center direction.  On its support
/// [support_lo, support_hi] it oscillates `frequency` half-waves under a
/// smooth envelope; outside it is identically zero, and it meets the
/// boundary with value and derivative zero.
struct CenterBumpPerturbation {
    double support_lo = 0.0;
    double support_hi = 0.0;
    double amplitude = 0.0; ///< sup |h|
    int frequency = 0;      ///< oscillation count K; h has K-1 interior zeros
    double epsilon = 0.0;   ///< guaranteed bound on sup |h'|

    double width() const { return support_hi - support_lo; }

    double operator()(double y) const {
        if (y <= support_lo || y >= support_hi) return 0.0;
        double u = (y - support_lo) / width();
        double envelope = std::sin(M_PI * u);
        return amplitude * envelope * envelope * std::sin(M_PI * frequency * u);
    }

    double derivative(double y) const {
        if (y <= support_lo || y >= support_hi) return 0.0;
        double w = width();
        double u = (y - support_lo) / w;
        double s = std::sin(M_PI * u);
        double envelope = s * s;
        double envelope_prime = M_PI * std::sin(2.0 * M_PI * u);
        return amplitude / w *
               (envelope_prime * std::sin(M_PI * frequency * u) +
                M_PI * frequency * envelope * std::cos(M_PI * frequency * u));
    }
};

/// Builds the bump guaranteeing at least `zero_count` interior sign-change
/// zeros on a support of the given width, within C1 budget `epsilon`.  The
/// amplitude is the largest one the closed-form derivative bound
///   sup |h'| <= amplitude * pi * (frequency + 1) / width
/// certifies against epsilon, so doubling the requested zero count roughly
/// halves the amplitude: more fixed points cost C0 size, never C1 budget.
inline CenterBumpPerturbation spawn_center_fixed_points(double support_width, int zero_count,
                                                        double epsilon, double support_center = 0.0) {
    if (!(support_width > 0.0)) throw InvalidInputError("spawn_center_fixed_points: width must be positive");
    if (zero_count < 1) throw InvalidInputError("spawn_center_fixed_points: zero count must be >= 1");
    if (!(epsilon > 0.0)) throw InvalidInputError("spawn_center_fixed_points: epsilon must be positive");

    CenterBumpPerturbation bump;
    bump.frequency = zero_count + 2;
    bump.support_lo = support_center - support_width / 2.0;
    bump.support_hi = support_center + support_width / 2.0;
    bump.amplitude = epsilon * support_width / (M_PI * (bump.frequency + 1));
    bump.epsilon = epsilon;
    return bump;
}

/// Counts sign changes of the bump across a sample grid of the given
/// spacing.  Each sign change brackets at least one zero, so the result is
/// a certified lower bound on the number of fixed points the bump spawns.
/// The resolution must beat a quarter of the oscillation wavelength, or the
/// scan could step over adjacent zeros; coarser grids are rejected.
inline int count_fixed_points(const CenterBumpPerturbation& bump, double resolution) {
    if (!(resolution > 0.0)) throw InvalidInputError("count_fixed_points: resolution must be positive");
    if (bump.frequency < 1) throw InvalidInputError("count_fixed_points: bump has no oscillations");
    double quarter_wave = bump.width() / (4.0 * bump.frequency);
    if (!(resolution < quarter_wave))
        throw InvalidInputError("count_fixed_points: resolution " + std::to_string(resolution) +
                                " too coarse for the oscillation quarter-wave " +
                                std::to_string(quarter_wave));

    // Samples within the numerical dead band around zero carry no reliable
    // sign; they are skipped rather than allowed to fake a double crossing.
    double dead_band = bump.amplitude * 1e-9;
    int changes = 0;
    int previous_sign = 0;
    long samples = static_cast<long>(std::ceil(bump.width() / resolution));
    for (long i = 0; i <= samples; ++i) {
        double y = std::min(bump.support_lo + i * resolution, bump.support_hi);
        double value = bump(y);
        if (std::abs(value) <= dead_band) continue;
        int sign = value > 0.0 ? 1 : -1;
        if (previous_sign != 0 && sign != previous_sign) ++changes;
        previous_sign = sign;
    }
    return changes;
}

struct CascadeOptions {
    bool include_baseline = false; ///< add the model's own census on top
    int baseline_max_loops = 2;
    long long budget = default_itinerary_budget;
    double support_width = 0.02; ///< desired bump support before shrinking
};

/// Census of the model after the full perturbation cascade: every planned
/// period j receives a bump spawning `sequence(j)` orbits of period j, i.e.
/// j * sequence(j) periodic points, on its own support interval.
///
/// The function verifies the cascade is actually affordable (each step's
/// center exponent must flatten within `epsilon`) and that the per-step
/// supports can be shrunk to pairwise disjoint intervals around the
/// solutions' center coordinates; the counts themselves are exact integers.
inline GrowthTable perturbed_count_table(const SHSimpleCycle& cycle, const ExhaustionPlan& plan,
                                         const SequenceSpec& sequence, double epsilon,
                                         const CascadeOptions& options = {}) {
    if (plan.steps.empty()) throw InvalidInputError("perturbed_count_table: empty plan");

    for (size_t l = 0; l < plan.steps.size(); ++l) {
        try {
            zero_center_exponent(orbit_center_cocycle(cycle, plan.steps[l]), epsilon);
        } catch (const PerturbationBudgetError& e) {
            throw PerturbationBudgetError("perturbed_count_table: plan step " + std::to_string(l) +
                                              " (period " + std::to_string(plan.steps[l].period) +
                                              ") cannot flatten its center exponent: " + e.what(),
                                          e.required_epsilon());
        }
    }

    // Disjoint supports: each bump lives around its own solution's center
    // coordinate, shrunk below the gap to the nearest other solution.
    std::vector<double> centers;
    double anchor = anchor_center(cycle.t1, cycle.index);
    for (const PeriodicSolution& sol : plan.steps) centers.push_back(anchor + sol.center_offset);
    for (size_t l = 0; l < centers.size(); ++l) {
        double nearest = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < centers.size(); ++k)
            if (k != l) nearest = std::min(nearest, std::abs(centers[l] - centers[k]));
        double width = std::min(options.support_width, 0.98 * nearest);
        if (!(width > 0.0))
            throw Error("perturbed_count_table: two plan steps share a center coordinate; "
                        "supports cannot be made disjoint");
    }

    GrowthTable table;
    for (const PeriodicSolution& sol : plan.steps)
        table.counts[sol.period] = BigInt(sol.period) * sequence(sol.period);
    if (options.include_baseline)
        for (const PeriodicSolution& sol : plan.steps)
            table.counts[sol.period] +=
                BigInt(sol.period) *
                static_cast<long>(enumerate_periodic_points(cycle, sol.period,
                                                            options.baseline_max_loops, options.budget)
                                      .size());
    return table;
}

} // namespace shc
