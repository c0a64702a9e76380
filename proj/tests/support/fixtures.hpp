#pragma once

// Shared test fixtures.  `c0()` is the reference cycle used throughout the
// suite: one-dimensional blocks with small rational entries, so every
// closed-form quantity has an exact hand-checkable value.

#include "shc/shc.hpp"

namespace shc::test {

inline BasicCycle<Rational> c0_rational() {
    using R = Rational;
    BasicCycle<R> cycle;
    cycle.index = CycleIndex{1, 1};

    cycle.p1.role = ChartRole::P1;
    cycle.p1.stable = Matrix<R>{{R(2, 5)}};
    cycle.p1.center = R(2);
    cycle.p1.unstable = Matrix<R>{{R(5)}};
    cycle.p1.radii = {R(1), R(1), R(1)};

    cycle.p2.role = ChartRole::P2;
    cycle.p2.stable = Matrix<R>{{R(1, 5)}};
    cycle.p2.center = R(1, 3);
    cycle.p2.unstable = Matrix<R>{{R(4)}};
    cycle.p2.radii = {R(1), R(1), R(1)};

    cycle.t1.source = ChartRole::P1;
    cycle.t1.steps = 1;
    cycle.t1.stable = Matrix<R>{{R(1, 2)}};
    cycle.t1.center_multiplier = R(1);
    cycle.t1.unstable = Matrix<R>{{R(3, 2)}};
    cycle.t1.source_anchor = {R(0), R(1, 2), R(0)};
    cycle.t1.target_anchor = {R(3, 10), R(0), R(0)};
    cycle.t1.region = {R(1, 10), R(1, 10), R(1, 10)};

    cycle.t2.source = ChartRole::P2;
    cycle.t2.steps = 1;
    cycle.t2.stable = Matrix<R>{{R(1, 2)}};
    cycle.t2.center_multiplier = R(1);
    cycle.t2.unstable = Matrix<R>{{R(3, 2)}};
    cycle.t2.source_anchor = {R(0), R(0), R(3, 5)};
    cycle.t2.target_anchor = {R(3, 10), R(0), R(0)};
    cycle.t2.region = {R(1, 10), R(1, 10), R(1, 10)};

    return cycle;
}

inline SHSimpleCycle c0() { return approximate_cycle(c0_rational()); }

/// c0 with the P2 center multiplier moved to 1/2, making the two center
/// logs rationally dependent (2^a * (1/2)^a = 1): the resonant variant.
inline SHSimpleCycle c0_resonant() {
    SHSimpleCycle cycle = c0();
    cycle.p2.center = 0.5;
    return cycle;
}

} // namespace shc::test
