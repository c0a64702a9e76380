#pragma once

// Brute-force counterpart to the closed-form solver.
//
// Nothing in this header knows the solver's formulas.  Periodic points are
// found the pedestrian way: build the one-step affine maps, compose them
// along an itinerary, solve the resulting affine fixed-point system block by
// block, and walk the orbit step by step checking that every intermediate
// point sits in the region where the step it is about to take is actually
// defined.  Agreement between the two routes is the library's main internal
// consistency check, and the tests lean on it heavily.
//
// An itinerary is a list of loops.  One loop leaves the transition region at
// P1, spends m2 iterates at P2, crosses back through the transition region
// at P2, and spends m1 iterates at P1.  Points are always expressed in the
// chart they currently occupy; the trace records which chart that is.

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "shc/growth.hpp"
#include "shc/solver.hpp"

namespace shc {

/// Affine map that never mixes the three blocks: each block has its own
/// linear part and offset.  Closed under composition, which is what makes
/// the brute-force route cheap.
template <class T>
struct AffineBlockMap {
    Matrix<T> stable_linear;
    Vector<T> stable_offset;
    T center_linear = T(1);
    T center_offset = T(0);
    Matrix<T> unstable_linear;
    Vector<T> unstable_offset;

    CycleIndex dims() const {
        return CycleIndex{stable_linear.rows(), unstable_linear.rows()};
    }

    Vector<T> operator()(const Vector<T>& point) const {
        CycleIndex ix = dims();
        if (static_cast<int>(point.size()) != ix.total_dim())
            throw InvalidInputError("AffineBlockMap: point dimension mismatch");
        Vector<T> s = stable_linear * stable_block(point, ix) + stable_offset;
        T c = center_linear * center_block(point, ix) + center_offset;
        Vector<T> u = unstable_linear * unstable_block(point, ix) + unstable_offset;
        return make_point(s, c, u);
    }
};

template <class T>
AffineBlockMap<T> identity_block_map(const CycleIndex& ix) {
    return {Matrix<T>::identity(ix.stable_dim), Vector<T>(ix.stable_dim, T(0)),
            T(1),                               T(0),
            Matrix<T>::identity(ix.unstable_dim), Vector<T>(ix.unstable_dim, T(0))};
}

/// `second` after `first`.
template <class T>
AffineBlockMap<T> compose(const AffineBlockMap<T>& second, const AffineBlockMap<T>& first) {
    return {second.stable_linear * first.stable_linear,
            second.stable_linear * first.stable_offset + second.stable_offset,
            second.center_linear * first.center_linear,
            second.center_linear * first.center_offset + second.center_offset,
            second.unstable_linear * first.unstable_linear,
            second.unstable_linear * first.unstable_offset + second.unstable_offset};
}

/// m iterates of a chart's linear dynamics as one affine (here: linear) map.
template <class T>
AffineBlockMap<T> chart_iterates_map(const FixedPointChart<T>& chart, int m) {
    if (m < 0) throw InvalidInputError("chart_iterates_map: negative iterate count");
    CycleIndex ix{chart.stable.rows(), chart.unstable.rows()};
    return {matrix_power(chart.stable, m), Vector<T>(ix.stable_dim, T(0)),
            scalar_pow(chart.center, m),   T(0),
            matrix_power(chart.unstable, m), Vector<T>(ix.unstable_dim, T(0))};
}

/// The transition as an affine map in chart coordinates: linear part from
/// the transition blocks, offset chosen so the source anchor lands exactly
/// on the target anchor.
template <class T>
AffineBlockMap<T> transition_map(const TransitionChart<T>& t) {
    CycleIndex ix{t.stable.rows(), t.unstable.rows()};
    return {t.stable,
            stable_block(t.target_anchor, ix) - t.stable * stable_block(t.source_anchor, ix),
            t.center_multiplier,
            center_block(t.target_anchor, ix) - t.center_multiplier * center_block(t.source_anchor, ix),
            t.unstable,
            unstable_block(t.target_anchor, ix) - t.unstable * unstable_block(t.source_anchor, ix)};
}

namespace detail {

/// Block outside the linearized region: the point itself must lie in the
/// chart polydisc and so must its image under the chart dynamics.  Returns
/// the first violating block, or nullptr.
template <class T>
const char* linearized_region_violation(const FixedPointChart<T>& chart, const Vector<T>& point,
                                        const CycleIndex& ix) {
    if (const char* block = polydisc_violation(point, chart.radii, ix)) return block;
    Vector<T> image = make_point(chart.stable * stable_block(point, ix),
                                 T(chart.center * center_block(point, ix)),
                                 chart.unstable * unstable_block(point, ix));
    return polydisc_violation(image, chart.radii, ix);
}

} // namespace detail

/// One iterate of a chart's dynamics, defined only on the linearized region.
/// Throws RegionError (naming the offending block) when the point or its
/// image leaves the chart polydisc.
template <class T>
Vector<T> local_step(const FixedPointChart<T>& chart, const Vector<T>& point) {
    CycleIndex ix{chart.stable.rows(), chart.unstable.rows()};
    if (static_cast<int>(point.size()) != ix.total_dim())
        throw InvalidInputError("local_step: point dimension mismatch");
    if (const char* block = polydisc_violation(point, chart.radii, ix))
        throw RegionError(std::string("local_step: point outside the chart polydisc (") +
                              chart_name(chart.role) + ", " + block + " block)",
                          block);
    Vector<T> image = make_point(chart.stable * stable_block(point, ix),
                                 T(chart.center * center_block(point, ix)),
                                 chart.unstable * unstable_block(point, ix));
    if (const char* block = polydisc_violation(image, chart.radii, ix))
        throw RegionError(std::string("local_step: image leaves the linearized region (") +
                              chart_name(chart.role) + ", " + block + " block)",
                          block);
    return image;
}

/// Applies a transition to a point of its region.  Throws RegionError when
/// the point is not within the region half-widths of the source anchor.
template <class T>
Vector<T> transition_step(const TransitionChart<T>& t, const Vector<T>& point) {
    CycleIndex ix{t.stable.rows(), t.unstable.rows()};
    if (static_cast<int>(point.size()) != ix.total_dim())
        throw InvalidInputError("transition_step: point dimension mismatch");
    if (const char* block = polydisc_violation(point, t.source_anchor, t.region, ix))
        throw RegionError(std::string("transition_step: point outside the transition region (") +
                              block + " block)",
                          block);
    return transition_map(t)(point);
}

/// A multi-loop excursion: each entry is one turn around the cycle.
struct Itinerary {
    std::vector<LoopParams> loops;
};

template <class T>
int itinerary_period(const BasicCycle<T>& cycle, const Itinerary& itinerary) {
    if (itinerary.loops.empty()) throw InvalidInputError("itinerary: must contain at least one loop");
    int period = 0;
    for (const LoopParams& p : itinerary.loops) period += loop_period(cycle, p);
    return period;
}

/// Return map of the itinerary, expressed in the P1 chart: the composition
///   [last loop] o ... o [first loop],
/// where one loop is F1^m1 o T2 o F2^m2 o T1 (T1 acts first).
template <class T>
AffineBlockMap<T> loop_return_map(const BasicCycle<T>& cycle, const Itinerary& itinerary) {
    if (itinerary.loops.empty()) throw InvalidInputError("loop_return_map: empty itinerary");
    AffineBlockMap<T> total = identity_block_map<T>(cycle.index);
    for (const LoopParams& p : itinerary.loops) {
        detail::require_loop_params(p);
        AffineBlockMap<T> loop =
            compose(chart_iterates_map(cycle.p1, p.m1),
                    compose(transition_map(cycle.t2),
                            compose(chart_iterates_map(cycle.p2, p.m2), transition_map(cycle.t1))));
        total = compose(loop, total);
    }
    return total;
}

/// Solves x = A x + b block by block.  The center block is scalar and
/// degenerates when its multiplier is (numerically) 1; that is reported as
/// resonance.  A singular stable or unstable system is reported as a
/// degenerate loop, naming the block.
template <class T>
Vector<T> fixed_point(const AffineBlockMap<T>& map) {
    CycleIndex ix = map.dims();
    Vector<T> s, u;
    try {
        s = linear_solve(Matrix<T>::identity(ix.stable_dim) - map.stable_linear, map.stable_offset);
    } catch (const SingularMatrixError&) {
        throw DegenerateLoopError("fixed_point: stable block system is singular", "stable");
    }
    T one_minus = T(1) - map.center_linear;
    if (scalar_abs(one_minus) <= resonance_tolerance<T>())
        throw ResonanceError("fixed_point: center multiplier is resonant (linear part ~ 1)",
                             to_double(map.center_linear));
    T c = map.center_offset / one_minus;
    try {
        u = linear_solve(Matrix<T>::identity(ix.unstable_dim) - map.unstable_linear, map.unstable_offset);
    } catch (const SingularMatrixError&) {
        throw DegenerateLoopError("fixed_point: unstable block system is singular", "unstable");
    }
    return make_point(s, c, u);
}

/// One recorded orbit event: the point sitting in `chart` after `step`
/// ambient iterates, and whether it lies in the region required for the move
/// it is about to make (or, for the last record, for closing the loop).
template <class T>
struct TracePoint {
    ChartRole chart = ChartRole::P1;
    long step = 0;
    Vector<T> point;
    bool in_required_region = true;
};

template <class T>
struct OrbitTrace {
    std::vector<TracePoint<T>> points;
    bool all_valid = true;
    std::string first_violation; ///< empty when all_valid
};

/// Walks an orbit along the itinerary, checking region membership before
/// every move.  Membership failures are data, never exceptions: the first
/// violation is recorded and the trace stops there.  The final record's
/// membership asks whether the orbit arrived back inside the P1 transition
/// region, ready to close up.
template <class T>
OrbitTrace<T> trace_orbit(const BasicCycle<T>& cycle, const Itinerary& itinerary,
                          const Vector<T>& start) {
    const CycleIndex& ix = cycle.index;
    if (static_cast<int>(start.size()) != ix.total_dim())
        throw InvalidInputError("trace_orbit: start point dimension mismatch");
    if (itinerary.loops.empty()) throw InvalidInputError("trace_orbit: empty itinerary");

    OrbitTrace<T> trace;
    Vector<T> point = start;
    long step = 0;

    auto record_violation = [&](ChartRole chart, const std::string& region, const char* block) {
        trace.points.push_back({chart, step, point, false});
        trace.all_valid = false;
        trace.first_violation = "step " + std::to_string(step) + ": " + region +
                                " violated in the " + block + " block";
    };

    for (const LoopParams& p : itinerary.loops) {
        detail::require_loop_params(p);
        if (const char* block = polydisc_violation(point, cycle.t1.source_anchor, cycle.t1.region, ix)) {
            record_violation(ChartRole::P1, "transition region at P1", block);
            return trace;
        }
        trace.points.push_back({ChartRole::P1, step, point, true});
        point = transition_map(cycle.t1)(point);
        step += cycle.t1.steps;

        for (int k = 0; k < p.m2; ++k) {
            if (const char* block = detail::linearized_region_violation(cycle.p2, point, ix)) {
                record_violation(ChartRole::P2, "linearized region at P2", block);
                return trace;
            }
            trace.points.push_back({ChartRole::P2, step, point, true});
            point = make_point(cycle.p2.stable * stable_block(point, ix),
                               T(cycle.p2.center * center_block(point, ix)),
                               cycle.p2.unstable * unstable_block(point, ix));
            step += 1;
        }

        if (const char* block = polydisc_violation(point, cycle.t2.source_anchor, cycle.t2.region, ix)) {
            record_violation(ChartRole::P2, "transition region at P2", block);
            return trace;
        }
        trace.points.push_back({ChartRole::P2, step, point, true});
        point = transition_map(cycle.t2)(point);
        step += cycle.t2.steps;

        for (int k = 0; k < p.m1; ++k) {
            if (const char* block = detail::linearized_region_violation(cycle.p1, point, ix)) {
                record_violation(ChartRole::P1, "linearized region at P1", block);
                return trace;
            }
            trace.points.push_back({ChartRole::P1, step, point, true});
            point = make_point(cycle.p1.stable * stable_block(point, ix),
                               T(cycle.p1.center * center_block(point, ix)),
                               cycle.p1.unstable * unstable_block(point, ix));
            step += 1;
        }
    }

    if (const char* block = polydisc_violation(point, cycle.t1.source_anchor, cycle.t1.region, ix)) {
        record_violation(ChartRole::P1, "transition region at P1 (loop closure)", block);
        return trace;
    }
    trace.points.push_back({ChartRole::P1, step, point, true});
    return trace;
}

/// Agreement threshold between the closed-form solution and the oracle's
/// fixed point, and for the orbit returning to its start.
inline constexpr double verification_tolerance = 1e-9;

struct VerificationReport {
    double max_component_error = 0.0; ///< closed form vs brute-force fixed point
    double periodicity_error = 0.0;   ///< traced final point vs start
    bool trace_all_valid = false;
    bool empirical_realizable = false;
    std::string failure; ///< empty when empirically realizable
};

namespace detail {

inline double scaled_difference(const Vector<double>& a, const Vector<double>& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

/// Worst-case factor by which one itinerary magnifies a perturbation of its
/// start point.  Contracting blocks count as 1: rounding noise never shrinks.
inline double loop_amplification(const SHSimpleCycle& cycle, const Itinerary& itinerary) {
    auto chart_factor = [](const FixedPointChart<double>& chart) {
        return std::max(
            {1.0, opnorm(chart.stable), std::abs(chart.center), opnorm(chart.unstable)});
    };
    auto transition_factor = [](const TransitionChart<double>& t) {
        return std::max({1.0, opnorm(t.stable), std::abs(t.center_multiplier), opnorm(t.unstable)});
    };
    double amplification = 1.0;
    for (const LoopParams& p : itinerary.loops) {
        amplification *= std::pow(chart_factor(cycle.p1), p.m1) * transition_factor(cycle.t1);
        amplification *= std::pow(chart_factor(cycle.p2), p.m2) * transition_factor(cycle.t2);
    }
    return amplification;
}

} // namespace detail

/// Cross-checks one closed-form solution against the brute-force route:
/// does the composed return map have the same fixed point, does the orbit
/// stay inside every required region, and does it come back to its start?
inline VerificationReport verify_solution(const SHSimpleCycle& cycle, const PeriodicSolution& sol) {
    Itinerary itinerary{{sol.params}};
    Vector<double> closed_form = solution_start_point(cycle, sol);
    Vector<double> oracle_point = fixed_point(loop_return_map(cycle, itinerary));

    VerificationReport report;
    report.max_component_error = detail::scaled_difference(closed_form, oracle_point);

    OrbitTrace<double> trace = trace_orbit(cycle, itinerary, closed_form);
    report.trace_all_valid = trace.all_valid;
    if (trace.all_valid)
        report.periodicity_error = detail::scaled_difference(trace.points.back().point, closed_form);
    else
        report.periodicity_error = std::numeric_limits<double>::infinity();

    // A forward trace cannot certify closure better than the rounding of the
    // start point magnified by the loop's expansion, so the closure tolerance
    // grows with the itinerary's amplification factor.
    double steps = 0;
    for (const LoopParams& p : itinerary.loops)
        steps += p.m1 + p.m2 + cycle.t1.steps + cycle.t2.steps;
    double closure_tolerance =
        std::max(verification_tolerance, 64.0 * std::numeric_limits<double>::epsilon() * steps *
                                             detail::loop_amplification(cycle, itinerary));

    report.empirical_realizable = trace.all_valid &&
                                  report.max_component_error <= verification_tolerance &&
                                  report.periodicity_error <= closure_tolerance;
    if (!trace.all_valid)
        report.failure = trace.first_violation;
    else if (report.max_component_error > verification_tolerance)
        report.failure = "closed form and brute-force fixed point disagree";
    else if (report.periodicity_error > closure_tolerance)
        report.failure = "traced orbit does not return to its start";
    return report;
}

/// A periodic point found by enumeration: its canonical itinerary and the
/// orbit's start point in the P1 chart.
struct PeriodicPoint {
    Itinerary itinerary;
    Vector<double> point;
    bool realizable = true;
};

inline constexpr long long default_itinerary_budget = 1'000'000;

namespace detail {

inline bool flattened_less(const std::vector<LoopParams>& a, const std::vector<LoopParams>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const LoopParams& x, const LoopParams& y) {
                                            return std::pair(x.m1, x.m2) < std::pair(y.m1, y.m2);
                                        });
}

/// Canonical representative of a periodic orbit's itinerary: the
/// lexicographically smallest rotation of its loop list.
inline bool is_canonical_rotation(const std::vector<LoopParams>& loops) {
    for (size_t shift = 1; shift < loops.size(); ++shift) {
        std::vector<LoopParams> rotatedLoops(loops.begin() + shift, loops.end());
        rotatedLoops.insert(rotatedLoops.end(), loops.begin(), loops.begin() + shift);
        if (flattened_less(rotatedLoops, loops)) return false;
    }
    return true;
}

/// An itinerary that is a repetition of a shorter one describes a point of
/// smaller exact period; those belong to the smaller period's census.
inline bool is_primitive(const std::vector<LoopParams>& loops) {
    size_t k = loops.size();
    for (size_t d = 1; d < k; ++d) {
        if (k % d != 0) continue;
        bool repeats = true;
        for (size_t i = d; i < k && repeats; ++i) repeats = loops[i] == loops[i % d];
        if (repeats) return false;
    }
    return true;
}

inline BigInt compositions(int total, int parts) {
    if (total < parts) return 0;
    // C(total-1, parts-1)
    BigInt result = 1;
    for (int i = 1; i < parts; ++i) {
        result *= total - parts + i;
        result /= i;
    }
    return result;
}

template <class Visit>
void for_each_composition(int total, int parts, std::vector<int>& scratch, Visit&& visit) {
    if (parts == 1) {
        scratch.push_back(total);
        visit(scratch);
        scratch.pop_back();
        return;
    }
    for (int first = 1; first <= total - (parts - 1); ++first) {
        scratch.push_back(first);
        for_each_composition(total - first, parts - 1, scratch, visit);
        scratch.pop_back();
    }
}

} // namespace detail

/// Finds every periodic point of exact ambient period `period` whose orbit
/// stays inside the modeled charts, using itineraries of at most `max_loops`
/// loops.  Results are the orbits' start points in the P1 chart, one entry
/// per orbit (rotated itineraries are identified), sorted lexicographically
/// by itinerary.  Throws BudgetExceededError if the number of candidate
/// itineraries exceeds `budget` before any are examined.
inline std::vector<PeriodicPoint> enumerate_periodic_points(const SHSimpleCycle& cycle, int period,
                                                            int max_loops,
                                                            long long budget = default_itinerary_budget) {
    if (period < 1) throw InvalidInputError("enumerate_periodic_points: period must be >= 1");
    if (max_loops < 1) throw InvalidInputError("enumerate_periodic_points: max_loops must be >= 1");
    if (budget < 1) throw InvalidInputError("enumerate_periodic_points: budget must be >= 1");

    const int transition_steps = cycle.t1.steps + cycle.t2.steps;

    BigInt candidate_count = 0;
    for (int k = 1; k <= max_loops; ++k) {
        int interior = period - k * transition_steps;
        if (interior < 2 * k) continue;
        candidate_count += detail::compositions(interior, 2 * k);
    }
    if (candidate_count > budget) {
        long long required = candidate_count > BigInt(std::numeric_limits<long long>::max())
                                 ? std::numeric_limits<long long>::max()
                                 : candidate_count.convert_to<long long>();
        throw BudgetExceededError("enumerate_periodic_points: " + candidate_count.str() +
                                      " candidate itineraries exceed the budget of " +
                                      std::to_string(budget),
                                  required, budget);
    }

    std::vector<PeriodicPoint> found;
    for (int k = 1; k <= max_loops; ++k) {
        int interior = period - k * transition_steps;
        if (interior < 2 * k) continue;
        std::vector<int> scratch;
        detail::for_each_composition(interior, 2 * k, scratch, [&](const std::vector<int>& parts) {
            std::vector<LoopParams> loops(k);
            for (int i = 0; i < k; ++i) loops[i] = {parts[2 * i], parts[2 * i + 1]};
            if (!detail::is_canonical_rotation(loops) || !detail::is_primitive(loops)) return;
            Itinerary itinerary{loops};
            Vector<double> point;
            try {
                point = fixed_point(loop_return_map(cycle, itinerary));
            } catch (const ResonanceError&) {
                return; // no isolated periodic point along this itinerary
            } catch (const DegenerateLoopError&) {
                return;
            }
            OrbitTrace<double> trace = trace_orbit(cycle, itinerary, point);
            if (trace.all_valid) found.push_back({std::move(itinerary), std::move(point), true});
        });
    }
    std::sort(found.begin(), found.end(), [](const PeriodicPoint& a, const PeriodicPoint& b) {
        return detail::flattened_less(a.itinerary.loops, b.itinerary.loops);
    });
    return found;
}

/// Census over a period range: number of periodic points (points, not
/// orbits: one orbit of period n contributes n points) of each exact period
/// in [n_min, n_max].  The budget applies to each period separately.
inline GrowthTable count_table(const SHSimpleCycle& cycle, int n_min, int n_max, int max_loops,
                               long long budget = default_itinerary_budget) {
    if (n_min > n_max) throw InvalidInputError("count_table: empty period range");
    GrowthTable table;
    for (int n = n_min; n <= n_max; ++n) {
        auto points = enumerate_periodic_points(cycle, n, max_loops, budget);
        table.counts[n] = BigInt(n) * static_cast<long>(points.size());
    }
    return table;
}

} // namespace shc
