#pragma once

#include <map>
#include <vector>

#include "shc/errors.hpp"
#include "shc/numeric.hpp"

namespace shc {

/// Periodic-point census: period -> number of points of that exact period.
/// Counts are exact integers; the interesting sequences outgrow 64 bits
/// around period 20.
struct GrowthTable {
    std::map<int, BigInt> counts;
};

/// Prescribed per-period orbit counts used by the perturbation cascade.
/// `Factorial` and `NTimesPow2` are the stock super-exponential and
/// exponential test sequences; `Table` looks up user-provided values and
/// treats missing periods as zero.
struct SequenceSpec {
    enum class Kind { Factorial, NTimesPow2, Table };

    Kind kind = Kind::Factorial;
    std::map<int, BigInt> table;

    BigInt operator()(int n) const {
        if (n < 0) throw InvalidInputError("SequenceSpec: negative index");
        switch (kind) {
        case Kind::Factorial: {
            BigInt f = 1;
            for (int i = 2; i <= n; ++i) f *= i;
            return f;
        }
        case Kind::NTimesPow2:
            return BigInt(n) << n;
        case Kind::Table: {
            auto it = table.find(n);
            return it == table.end() ? BigInt(0) : it->second;
        }
        }
        throw InvalidInputError("SequenceSpec: unknown kind");
    }
};

/// Growth of one census against one exponential yardstick r^n.  Ratios are
/// kept in extended precision so huge exact counts divide cleanly, and the
/// running minimum from each period onward serves as a finite-range stand-in
/// for a liminf.
struct GrowthSeries {
    double base = 0.0;                    ///< r
    std::vector<int> periods;
    std::vector<long double> ratios;      ///< counts(n) / r^n
    std::vector<long double> running_min; ///< min of ratios from this period on
    bool divergence = false;              ///< running minima strictly increase
};

struct GrowthReport {
    std::vector<GrowthSeries> series;
};

/// Compares the census against r^n for each requested base r > 1.  The
/// divergence flag is the finite-range verdict "counts/r^n is marching
/// upward": true exactly when the running minima strictly increase across
/// the whole covered range.
inline GrowthReport growth_report(const GrowthTable& table, const std::vector<double>& bases) {
    GrowthReport report;
    for (double r : bases) {
        if (!(r > 1.0)) throw InvalidInputError("growth_report: every base must be > 1");
        GrowthSeries series;
        series.base = r;
        for (const auto& [n, count] : table.counts) {
            series.periods.push_back(n);
            long double ratio = count.convert_to<long double>() / powl(static_cast<long double>(r), n);
            series.ratios.push_back(ratio);
        }
        series.running_min.resize(series.ratios.size());
        long double acc = 0;
        for (size_t i = series.ratios.size(); i-- > 0;) {
            acc = i + 1 == series.ratios.size() ? series.ratios[i] : std::min(series.ratios[i], acc);
            series.running_min[i] = acc;
        }
        series.divergence = series.running_min.size() >= 2;
        for (size_t i = 0; i + 1 < series.running_min.size(); ++i)
            if (!(series.running_min[i] < series.running_min[i + 1])) {
                series.divergence = false;
                break;
            }
        report.series.push_back(std::move(series));
    }
    return report;
}

} // namespace shc
