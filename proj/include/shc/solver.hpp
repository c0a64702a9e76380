#pragma once

// Closed-form periodic solutions for one-loop itineraries.
//
// A loop spends m1 iterates at the center-expanding chart and m2 at the
// center-contracting chart, joined by the two transitions.  Because every
// block is affine and the blocks never mix, the return map factors into
// three independent fixed-point problems, each solvable in closed form.
// The templates below run unchanged on double and on exact rationals; the
// aggregate solve_loop produces the double-precision summary used by the
// planner and the CLI.

#include <cmath>

#include "shc/model.hpp"

namespace shc {

/// Iterate counts of a single loop: m1 at the center-expanding chart (P1),
/// m2 at the center-contracting chart (P2).
struct LoopParams {
    int m1 = 1;
    int m2 = 1;

    bool operator==(const LoopParams&) const = default;
};

namespace detail {

inline void require_loop_params(const LoopParams& p) {
    if (p.m1 < 1 || p.m2 < 1) throw InvalidInputError("loop params: m1 and m2 must be >= 1");
}

} // namespace detail

/// Number of ambient iterates in one loop: both chart visits plus both
/// transitions.
template <class T>
int loop_period(const BasicCycle<T>& cycle, const LoopParams& p) {
    detail::require_loop_params(p);
    return cycle.t1.steps + p.m2 + cycle.t2.steps + p.m1;
}

/// Product of the center multipliers around one loop.  The transitions
/// contribute exactly 1, so only the chart visits matter.
template <class T>
T loop_center_multiplier(const BasicCycle<T>& cycle, const LoopParams& p) {
    detail::require_loop_params(p);
    return scalar_pow(cycle.p1.center, p.m1) * scalar_pow(cycle.p2.center, p.m2);
}

/// Center offset of the loop's periodic point, measured from the
/// heteroclinic anchor.  The center return map is y -> s*(y - q) with q the
/// anchor offset, so the fixed point sits at offset q/(s-1).  A multiplier
/// product at (or, in floating point, within tolerance of) 1 is resonant:
/// the equation degenerates.
template <class T>
T center_solution(const BasicCycle<T>& cycle, const LoopParams& p) {
    T s = loop_center_multiplier(cycle, p);
    if (scalar_abs(s - T(1)) <= resonance_tolerance<T>())
        throw ResonanceError("center_solution: loop multiplier is resonant (product ~ 1)", to_double(s));
    return anchor_center(cycle.t1, cycle.index) / (s - T(1));
}

/// Stable coordinates of the loop's periodic point.  Composing the four
/// stable blocks around the loop gives an affine contraction; this returns
/// its fixed point.
template <class T>
Vector<T> stable_solution(const BasicCycle<T>& cycle, const LoopParams& p) {
    detail::require_loop_params(p);
    const CycleIndex& ix = cycle.index;
    Matrix<T> p1_pow = matrix_power(cycle.p1.stable, p.m1);
    Matrix<T> p2_pow = matrix_power(cycle.p2.stable, p.m2);
    Matrix<T> around = p1_pow * cycle.t2.stable * p2_pow * cycle.t1.stable;
    Vector<T> drift = p1_pow * (target_stable(cycle.t2, ix) +
                                cycle.t2.stable * (p2_pow * target_stable(cycle.t1, ix)));
    try {
        return linear_solve(Matrix<T>::identity(ix.stable_dim) - around, drift);
    } catch (const SingularMatrixError&) {
        throw DegenerateLoopError("stable_solution: stable fixed-point system is singular", "stable");
    }
}

/// Unstable coordinates of the loop's periodic point.  Solving forward would
/// invert a huge expansion, so the system is normalized by the inverse of
/// the final expanding factor first; the resulting matrix is well
/// conditioned whenever the loop is genuinely expanding.
template <class T>
Vector<T> unstable_solution(const BasicCycle<T>& cycle, const LoopParams& p) {
    detail::require_loop_params(p);
    const CycleIndex& ix = cycle.index;
    Matrix<T> outgoing = matrix_power(cycle.p2.unstable, p.m2) * cycle.t1.unstable;
    Matrix<T> incoming = inverse(cycle.t2.unstable) * matrix_power(cycle.p1.unstable, -static_cast<long>(p.m1));
    try {
        return linear_solve(outgoing - incoming, anchor_unstable(cycle.t2, ix));
    } catch (const SingularMatrixError&) {
        throw DegenerateLoopError("unstable_solution: unstable fixed-point system is singular", "unstable");
    }
}

/// Threshold on the loop multiplier product above which the center solution
/// is guaranteed to fit inside the transition region: product > threshold
/// implies |center offset| <= the region's center half-width.
template <class T>
T realizability_threshold(const BasicCycle<T>& cycle) {
    if (!(cycle.t1.region.center > T(0)))
        throw InvalidInputError("realizability_threshold: transition region half-width must be positive");
    return scalar_abs(anchor_center(cycle.t1, cycle.index)) / cycle.t1.region.center + T(1);
}

/// Average center expansion rate per ambient iterate over one loop.
inline double center_lyapunov(const SHSimpleCycle& cycle, const LoopParams& p) {
    if (!(cycle.p1.center > 0.0) || !(cycle.p2.center > 0.0))
        throw InvalidInputError("center_lyapunov: center multipliers must be positive");
    double log_sum = p.m1 * std::log(cycle.p1.center) + p.m2 * std::log(cycle.p2.center);
    return log_sum / loop_period(cycle, p);
}

/// One-loop periodic solution: anchor-relative coordinates plus the scalars
/// that drive planning and perturbation budgets.
struct PeriodicSolution {
    LoopParams params;
    Vector<double> stable_offset;   ///< X
    double center_offset = 0.0;     ///< Y, relative to the heteroclinic anchor
    Vector<double> unstable_offset; ///< Z
    int period = 0;
    double loop_multiplier = 0.0;   ///< center multiplier product around the loop
    double center_exponent = 0.0;   ///< log(loop_multiplier) / period
    bool analytic_realizable = false;
};

inline PeriodicSolution solve_loop(const SHSimpleCycle& cycle, const LoopParams& p) {
    PeriodicSolution sol;
    sol.params = p;
    sol.loop_multiplier = loop_center_multiplier(cycle, p);
    sol.center_offset = center_solution(cycle, p);
    sol.stable_offset = stable_solution(cycle, p);
    sol.unstable_offset = unstable_solution(cycle, p);
    sol.period = loop_period(cycle, p);
    sol.center_exponent = center_lyapunov(cycle, p);
    sol.analytic_realizable = sol.loop_multiplier > realizability_threshold(cycle);
    return sol;
}

/// Absolute coordinates of the solution's start point in the P1 chart.
template <class T>
Vector<T> solution_start_point(const BasicCycle<T>& cycle, const Vector<T>& stable_offset,
                               const T& center_offset, const Vector<T>& unstable_offset) {
    return make_point(stable_offset,
                      T(anchor_center(cycle.t1, cycle.index) + center_offset),
                      unstable_offset);
}

inline Vector<double> solution_start_point(const SHSimpleCycle& cycle, const PeriodicSolution& sol) {
    return solution_start_point(cycle, sol.stable_offset, sol.center_offset, sol.unstable_offset);
}

} // namespace shc
