#pragma once

// Core model types: two saddle charts whose linear dynamics share a single
// neutral (center) direction, glued by a pair of affine transition maps along
// a heteroclinic connection.  Everything downstream (closed-form solving,
// orbit tracing, planning, perturbation) consumes the BasicCycle structure
// defined here.

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "shc/matrix.hpp"

namespace shc {

enum class ChartRole { P1, P2 };

inline const char* chart_name(ChartRole role) { return role == ChartRole::P1 ? "P1" : "P2"; }

/// Block dimensions of the ambient space: stable + center + unstable, with
/// the center direction always one-dimensional.
struct CycleIndex {
    int stable_dim = 1;
    int unstable_dim = 1;
    static constexpr int center_dim = 1;

    int total_dim() const { return stable_dim + center_dim + unstable_dim; }
};

/// Per-block radii of an axis-aligned product of Euclidean balls
/// ("polydisc"): stable ball x center interval x unstable ball.
template <class T>
struct PolydiscRadii {
    T stable;
    T center;
    T unstable;
};

/// A fixed point chart with block-diagonal linear dynamics.  The chart at P1
/// expands the center direction, the chart at P2 contracts it; both have
/// contracting stable and expanding unstable blocks.
template <class T>
struct FixedPointChart {
    ChartRole role = ChartRole::P1;
    Matrix<T> stable;         ///< contracting block
    T center = T(0);          ///< scalar center multiplier
    Matrix<T> unstable;       ///< expanding block
    PolydiscRadii<T> radii{}; ///< chart polydisc
};

/// Affine map carrying a small box around a heteroclinic point in the source
/// chart into the target chart.  It represents `steps` iterates of the
/// underlying map spent outside both charts, and is rigid along the center
/// direction: its center multiplier is exactly one.
template <class T>
struct TransitionChart {
    ChartRole source = ChartRole::P1;
    int steps = 1;               ///< ambient iterates the map stands for
    Matrix<T> stable;            ///< stable-block linear part
    T center_multiplier = T(1);  ///< fixed to exactly 1
    Matrix<T> unstable;          ///< unstable-block linear part
    Vector<T> source_anchor;     ///< heteroclinic point, source chart coordinates
    Vector<T> target_anchor;     ///< its image, target chart coordinates
    PolydiscRadii<T> region{};   ///< half-widths of the transition region
};

/// The full cycle: two charts plus the two transitions P1 -> P2 -> P1.
template <class T>
struct BasicCycle {
    CycleIndex index;
    FixedPointChart<T> p1;
    FixedPointChart<T> p2;
    TransitionChart<T> t1; ///< leaves P1, lands in P2
    TransitionChart<T> t2; ///< leaves P2, lands in P1
};

using SHSimpleCycle = BasicCycle<double>;

// --- Point block access -----------------------------------------------------

template <class T>
Vector<T> stable_block(const Vector<T>& point, const CycleIndex& ix) {
    return Vector<T>(point.begin(), point.begin() + ix.stable_dim);
}

template <class T>
const T& center_block(const Vector<T>& point, const CycleIndex& ix) {
    return point[ix.stable_dim];
}

template <class T>
Vector<T> unstable_block(const Vector<T>& point, const CycleIndex& ix) {
    return Vector<T>(point.end() - ix.unstable_dim, point.end());
}

template <class T>
Vector<T> make_point(const Vector<T>& stable, const T& center, const Vector<T>& unstable) {
    Vector<T> p;
    p.reserve(stable.size() + 1 + unstable.size());
    p.insert(p.end(), stable.begin(), stable.end());
    p.push_back(center);
    p.insert(p.end(), unstable.begin(), unstable.end());
    return p;
}

// --- Anchor access -----------------------------------------------------------

/// Center coordinate of a transition's source anchor.  Nonzero exactly for
/// the transition leaving P1 (the connection sits off-center there).
template <class T>
const T& anchor_center(const TransitionChart<T>& t, const CycleIndex& ix) {
    return center_block(t.source_anchor, ix);
}

/// Unstable block of a transition's source anchor (nonzero for the
/// transition leaving P2).
template <class T>
Vector<T> anchor_unstable(const TransitionChart<T>& t, const CycleIndex& ix) {
    return unstable_block(t.source_anchor, ix);
}

/// Stable block of a transition's target anchor (the landing point's only
/// nonzero block).
template <class T>
Vector<T> target_stable(const TransitionChart<T>& t, const CycleIndex& ix) {
    return stable_block(t.target_anchor, ix);
}

// --- Region membership -------------------------------------------------------

/// Names the first block of `point` outside the closed polydisc of the given
/// radii (centered at `center`), or nullptr when the point is inside.
/// Closed-ball comparisons keep membership exact under rational arithmetic.
template <class T>
const char* polydisc_violation(const Vector<T>& point, const Vector<T>& center,
                               const PolydiscRadii<T>& radii, const CycleIndex& ix) {
    Vector<T> offset = point - center;
    if (norm_sq(stable_block(offset, ix)) > radii.stable * radii.stable) return "stable";
    if (scalar_abs(center_block(offset, ix)) > radii.center) return "center";
    if (norm_sq(unstable_block(offset, ix)) > radii.unstable * radii.unstable) return "unstable";
    return nullptr;
}

template <class T>
const char* polydisc_violation(const Vector<T>& point, const PolydiscRadii<T>& radii,
                               const CycleIndex& ix) {
    Vector<T> origin(point.size(), T(0));
    return polydisc_violation(point, origin, radii, ix);
}

template <class T>
bool in_polydisc(const Vector<T>& point, const PolydiscRadii<T>& radii, const CycleIndex& ix) {
    return polydisc_violation(point, radii, ix) == nullptr;
}

/// Membership in a transition region: the closed polydisc of half-widths
/// `t.region` centered at the source anchor.
template <class T>
bool in_transition_region(const TransitionChart<T>& t, const Vector<T>& point, const CycleIndex& ix) {
    return polydisc_violation(point, t.source_anchor, t.region, ix) == nullptr;
}

// --- Spectral bounds ---------------------------------------------------------

namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    return m;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& m) {
    Matrix<double> a(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
    return a;
}

inline Eigen::VectorXd singular_values(const Matrix<double>& a) {
    for (double x : a.data())
        if (!std::isfinite(x)) throw InvalidInputError("spectral bound: non-finite matrix entry");
    if (a.rows() == 0 || a.cols() == 0) throw InvalidInputError("spectral bound: empty matrix");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    return svd.singularValues();
}

} // namespace detail

/// Operator norm (largest singular value): the sharpest uniform expansion
/// bound ||A x|| <= opnorm(A) ||x||.
inline double opnorm(const Matrix<double>& a) {
    return detail::singular_values(a)(0);
}

/// Minimal expansion (smallest singular value): the sharpest uniform bound
/// ||A x|| >= minexp(A) ||x||.  Throws SingularMatrixError when A is
/// singular, since the bound would be vacuous.
inline double minexp(const Matrix<double>& a) {
    Eigen::VectorXd sv = detail::singular_values(a);
    double smallest = sv(sv.size() - 1);
    if (smallest <= 0.0) throw SingularMatrixError("minexp: singular matrix");
    return smallest;
}

// --- Validation ---------------------------------------------------------------

struct ValidationIssue {
    std::string axiom;  ///< stable identifier of the violated condition
    std::string detail; ///< human-readable description
    double measured = 0.0;
};

struct ValidationReport {
    std::vector<ValidationIssue> failures;
    std::vector<ValidationIssue> warnings;

    bool passed() const { return failures.empty(); }
};

namespace detail {

inline bool all_finite(const Matrix<double>& m) {
    for (double x : m.data())
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool all_finite(const Vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool chart_shape_ok(const FixedPointChart<double>& c, const CycleIndex& ix) {
    return c.stable.rows() == ix.stable_dim && c.stable.cols() == ix.stable_dim &&
           c.unstable.rows() == ix.unstable_dim && c.unstable.cols() == ix.unstable_dim;
}

inline bool transition_shape_ok(const TransitionChart<double>& t, const CycleIndex& ix) {
    return t.stable.rows() == ix.stable_dim && t.stable.cols() == ix.stable_dim &&
           t.unstable.rows() == ix.unstable_dim && t.unstable.cols() == ix.unstable_dim &&
           static_cast<int>(t.source_anchor.size()) == ix.total_dim() &&
           static_cast<int>(t.target_anchor.size()) == ix.total_dim();
}

inline bool chart_finite(const FixedPointChart<double>& c) {
    return all_finite(c.stable) && std::isfinite(c.center) && all_finite(c.unstable) &&
           std::isfinite(c.radii.stable) && std::isfinite(c.radii.center) && std::isfinite(c.radii.unstable);
}

inline bool transition_finite(const TransitionChart<double>& t) {
    return all_finite(t.stable) && std::isfinite(t.center_multiplier) && all_finite(t.unstable) &&
           all_finite(t.source_anchor) && all_finite(t.target_anchor) &&
           std::isfinite(t.region.stable) && std::isfinite(t.region.center) && std::isfinite(t.region.unstable);
}

inline void check_radii(const PolydiscRadii<double>& r, const std::string& axiom,
                        const std::string& who, ValidationReport& report) {
    if (!(r.stable > 0.0 && r.center > 0.0 && r.unstable > 0.0))
        report.failures.push_back({axiom, who + " polydisc radii must all be positive",
                                   std::min(r.stable, std::min(r.center, r.unstable))});
}

/// Normal-form check for a transition's anchors: the source anchor is zero
/// except in `live_block`, the target anchor is zero outside the stable
/// block, and the live component does not vanish.
inline void check_anchor_form(const TransitionChart<double>& t, const CycleIndex& ix,
                              const std::string& name, const char* live_block,
                              ValidationReport& report) {
    const std::string axiom = name + ".anchor-form";
    Vector<double> src_s = stable_block(t.source_anchor, ix);
    double src_c = center_block(t.source_anchor, ix);
    Vector<double> src_u = unstable_block(t.source_anchor, ix);
    bool center_live = std::string(live_block) == "center";

    if (norm_sq(src_s) != 0.0)
        report.failures.push_back({axiom, name + " source anchor stable block must be exactly zero", norm(src_s)});
    if (center_live) {
        if (src_c == 0.0)
            report.failures.push_back({axiom, name + " source anchor center offset must be nonzero", 0.0});
        if (norm_sq(src_u) != 0.0)
            report.failures.push_back({axiom, name + " source anchor unstable block must be exactly zero", norm(src_u)});
    } else {
        if (src_c != 0.0)
            report.failures.push_back({axiom, name + " source anchor center component must be exactly zero", src_c});
        if (norm_sq(src_u) == 0.0)
            report.failures.push_back({axiom, name + " source anchor unstable offset must be nonzero", 0.0});
    }
    double tgt_c = center_block(t.target_anchor, ix);
    Vector<double> tgt_u = unstable_block(t.target_anchor, ix);
    if (tgt_c != 0.0)
        report.failures.push_back({axiom, name + " target anchor center component must be exactly zero", tgt_c});
    if (norm_sq(tgt_u) != 0.0)
        report.failures.push_back({axiom, name + " target anchor unstable block must be exactly zero", norm(tgt_u)});
}

/// The transition region (anchor plus/minus the half-widths) must sit inside
/// the source chart's polydisc, blockwise: ||anchor block|| + half-width <=
/// chart radius.
inline void check_region_containment(const TransitionChart<double>& t,
                                     const FixedPointChart<double>& chart, const CycleIndex& ix,
                                     const std::string& name, ValidationReport& report) {
    const std::string axiom = name + ".region-in-chart";
    if (!(t.region.stable > 0.0 && t.region.center > 0.0 && t.region.unstable > 0.0)) {
        report.failures.push_back({name + ".region-positive", name + " region half-widths must all be positive",
                                   std::min(t.region.stable, std::min(t.region.center, t.region.unstable))});
        return;
    }
    double s = norm(stable_block(t.source_anchor, ix)) + t.region.stable;
    double c = std::abs(center_block(t.source_anchor, ix)) + t.region.center;
    double u = norm(unstable_block(t.source_anchor, ix)) + t.region.unstable;
    if (s > chart.radii.stable)
        report.failures.push_back({axiom, name + " region leaves the source chart in the stable block", s});
    if (c > chart.radii.center)
        report.failures.push_back({axiom, name + " region leaves the source chart in the center block", c});
    if (u > chart.radii.unstable)
        report.failures.push_back({axiom, name + " region leaves the source chart in the unstable block", u});
}

/// Non-fatal: warn when the image of the transition region cannot be shown
/// to land inside the target chart by the crude norm bound.
inline void warn_image_containment(const TransitionChart<double>& t,
                                   const FixedPointChart<double>& target, const CycleIndex& ix,
                                   const std::string& name, ValidationReport& report) {
    double s = norm(stable_block(t.target_anchor, ix)) + opnorm(t.stable) * t.region.stable;
    double c = std::abs(t.center_multiplier) * t.region.center;
    double u = opnorm(t.unstable) * t.region.unstable;
    if (s > target.radii.stable || c > target.radii.center || u > target.radii.unstable)
        report.warnings.push_back({name + ".image-region",
                                   name + " image region is not provably inside the target chart",
                                   std::max(s, std::max(c, u))});
}

} // namespace detail

/// Checks every axiom of the cycle model and returns the violations as data.
/// Spectral conditions are reported with the measured quantity so a caller
/// can see how badly an axiom fails.
inline ValidationReport validate_cycle(const SHSimpleCycle& cycle) {
    ValidationReport report;
    const CycleIndex& ix = cycle.index;

    if (ix.stable_dim < 1 || ix.unstable_dim < 1) {
        report.failures.push_back({"index.dimensions",
                                   "stable and unstable dimensions must both be at least 1",
                                   static_cast<double>(std::min(ix.stable_dim, ix.unstable_dim))});
        return report;
    }
    if (!detail::chart_shape_ok(cycle.p1, ix) || !detail::chart_shape_ok(cycle.p2, ix) ||
        !detail::transition_shape_ok(cycle.t1, ix) || !detail::transition_shape_ok(cycle.t2, ix)) {
        report.failures.push_back({"structure.shape", "block shapes do not match the declared dimensions", 0.0});
        return report;
    }
    if (!detail::chart_finite(cycle.p1) || !detail::chart_finite(cycle.p2) ||
        !detail::transition_finite(cycle.t1) || !detail::transition_finite(cycle.t2)) {
        report.failures.push_back({"structure.finite", "model contains non-finite entries", 0.0});
        return report;
    }
    if (cycle.p1.role != ChartRole::P1 || cycle.p2.role != ChartRole::P2 ||
        cycle.t1.source != ChartRole::P1 || cycle.t2.source != ChartRole::P2)
        report.failures.push_back({"structure.roles", "chart and transition roles are mislabeled", 0.0});

    detail::check_radii(cycle.p1.radii, "p1.radii-positive", "P1", report);
    detail::check_radii(cycle.p2.radii, "p2.radii-positive", "P2", report);

    // Chart spectra.  P1 expands the center, P2 contracts it; in both charts
    // the stable block is dominated by the center and the center by the
    // unstable block.
    double p1_stable = opnorm(cycle.p1.stable);
    double p2_stable = opnorm(cycle.p2.stable);
    double t1_center = cycle.p1.center;
    double t2_center = cycle.p2.center;

    if (!(p1_stable < 1.0))
        report.failures.push_back({"p1.stable-contraction", "P1 stable block is not a contraction", p1_stable});
    if (!(t1_center > 1.0))
        report.failures.push_back({"p1.center-expansion", "P1 center multiplier not > 1", t1_center});
    if (!(p2_stable < t2_center))
        report.failures.push_back({"p2.stable-dominated", "P2 stable block does not contract faster than the center", p2_stable});
    if (!(t2_center > 0.0 && t2_center < 1.0))
        report.failures.push_back({"p2.center-contraction", "P2 center multiplier not in (0, 1)", t2_center});

    try {
        double p1_unstable = minexp(cycle.p1.unstable);
        if (!(p1_unstable > t1_center))
            report.failures.push_back({"p1.unstable-dominates-center",
                                       "P1 unstable block does not expand faster than the center", p1_unstable});
        if (!(t1_center / p1_unstable < 1.0))
            report.failures.push_back({"p1.domination-center-unstable",
                                       "P1 center/unstable domination product not < 1", t1_center / p1_unstable});
    } catch (const SingularMatrixError&) {
        report.failures.push_back({"p1.unstable-invertible", "P1 unstable block is singular", 0.0});
    }
    try {
        double p2_unstable = minexp(cycle.p2.unstable);
        if (!(p2_unstable > 1.0))
            report.failures.push_back({"p2.unstable-expansion", "P2 unstable block is not an expansion", p2_unstable});
        if (!(t2_center / p2_unstable < 1.0))
            report.failures.push_back({"p2.domination-center-unstable",
                                       "P2 center/unstable domination product not < 1", t2_center / p2_unstable});
    } catch (const SingularMatrixError&) {
        report.failures.push_back({"p2.unstable-invertible", "P2 unstable block is singular", 0.0});
    }
    if (t1_center != 0.0 && !(p1_stable / t1_center < 1.0))
        report.failures.push_back({"p1.domination-stable-center",
                                   "P1 stable/center domination product not < 1", p1_stable / t1_center});
    if (t2_center != 0.0 && !(p2_stable / t2_center < 1.0))
        report.failures.push_back({"p2.domination-stable-center",
                                   "P2 stable/center domination product not < 1", p2_stable / t2_center});

    // Transitions.
    auto check_transition = [&](const TransitionChart<double>& t, const FixedPointChart<double>& source_chart,
                                const FixedPointChart<double>& target_chart, const std::string& name,
                                const char* live_block) {
        if (t.steps < 1)
            report.failures.push_back({name + ".steps", name + " must represent at least one iterate",
                                       static_cast<double>(t.steps)});
        if (t.center_multiplier != 1.0)
            report.failures.push_back({name + ".center-multiplier-one",
                                       name + " center multiplier != 1", t.center_multiplier});
        try {
            minexp(t.stable);
        } catch (const SingularMatrixError&) {
            report.failures.push_back({name + ".stable-invertible", name + " stable block is singular", 0.0});
        }
        try {
            minexp(t.unstable);
        } catch (const SingularMatrixError&) {
            report.failures.push_back({name + ".unstable-invertible", name + " unstable block is singular", 0.0});
        }
        detail::check_anchor_form(t, ix, name, live_block, report);
        detail::check_region_containment(t, source_chart, ix, name, report);
        detail::warn_image_containment(t, target_chart, ix, name, report);
    };
    check_transition(cycle.t1, cycle.p1, cycle.p2, "t1", "center");
    check_transition(cycle.t2, cycle.p2, cycle.p1, "t2", "unstable");

    return report;
}

/// Scan tolerance for near-resonances between the two center multipliers.
inline constexpr double resonance_scan_tolerance = 1e-9;

struct ResonancePair {
    int a;
    int b;
    double value; ///< a*log(P1 center) + b*log(P2 center)
};

/// Scans integer combinations of the center multiplier logs for
/// near-cancellations.  Pairs are canonicalized with a >= 1 (the mirrored
/// pair (-a, -b) carries the same information).  A resonant combination
/// makes some loop's center return multiplier land exactly on 1, so the
/// planner and solver treat these as warnings worth surfacing.
inline std::vector<ResonancePair> resonance_check(const SHSimpleCycle& cycle, int max_coeff) {
    if (max_coeff < 1) throw InvalidInputError("resonance_check: max_coeff must be >= 1");
    if (!(cycle.p1.center > 0.0) || !(cycle.p2.center > 0.0))
        throw InvalidInputError("resonance_check: center multipliers must be positive");
    double log1 = std::log(cycle.p1.center);
    double log2 = std::log(cycle.p2.center);
    std::vector<ResonancePair> hits;
    for (int a = 1; a <= max_coeff; ++a)
        for (int b = -max_coeff; b <= max_coeff; ++b) {
            if (b == 0) continue;
            double value = a * log1 + b * log2;
            if (std::abs(value) < resonance_scan_tolerance) hits.push_back({a, b, value});
        }
    return hits;
}

} // namespace shc
