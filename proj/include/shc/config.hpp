#pragma once

// Configuration documents: a JSON schema ("shc-1") describing a cycle plus
// optional planner / perturbation / report sections.  Every numeric entry
// may be written as a decimal or as an exact rational string "p/q"; values
// are kept as exact rationals so a loaded fixture feeds the exact-arithmetic
// code paths unchanged, with a rounded double model derived alongside.

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "shc/growth.hpp"
#include "shc/model.hpp"
#include "shc/numeric.hpp"
#include "shc/planner.hpp"

namespace shc {

using Json = nlohmann::ordered_json;

inline constexpr const char* config_schema = "shc-1";

struct PerturbOptions {
    double epsilon = 0.01;
    double support_width = 0.02;
    SequenceSpec sequence;
};

struct ReportOptions {
    std::vector<double> bases{2.0, 5.0, 10.0};
};

struct LoadedConfig {
    BasicCycle<Rational> exact_cycle;
    SHSimpleCycle cycle; ///< exact_cycle rounded to double
    std::optional<PlannerConfig> planner;
    std::optional<PerturbOptions> perturb;
    std::optional<ReportOptions> report;
};

/// Rounds an exact cycle to the double model consumed by the numeric paths.
inline SHSimpleCycle approximate_cycle(const BasicCycle<Rational>& exact) {
    auto mat = [](const Matrix<Rational>& m) {
        Matrix<double> out(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
        return out;
    };
    auto vec = [](const Vector<Rational>& v) {
        Vector<double> out;
        out.reserve(v.size());
        for (const Rational& x : v) out.push_back(to_double(x));
        return out;
    };
    auto radii = [](const PolydiscRadii<Rational>& r) {
        return PolydiscRadii<double>{to_double(r.stable), to_double(r.center), to_double(r.unstable)};
    };
    auto chart = [&](const FixedPointChart<Rational>& c) {
        return FixedPointChart<double>{c.role, mat(c.stable), to_double(c.center), mat(c.unstable),
                                       radii(c.radii)};
    };
    auto transition = [&](const TransitionChart<Rational>& t) {
        return TransitionChart<double>{t.source,        t.steps,
                                       mat(t.stable),   to_double(t.center_multiplier),
                                       mat(t.unstable), vec(t.source_anchor),
                                       vec(t.target_anchor), radii(t.region)};
    };
    return SHSimpleCycle{exact.index, chart(exact.p1), chart(exact.p2), transition(exact.t1),
                         transition(exact.t2)};
}

namespace detail {

inline std::pair<int, int> line_column(const std::string& text, size_t byte) {
    int line = 1, column = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

inline const Json& member(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw ConfigError("expected an object", path);
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError("missing required field", path + "." + key);
    return *it;
}

inline Rational rational_at(const Json& v, const std::string& path) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        if (v.is_number_float()) return exact_rational(v.get<double>());
    } catch (const InvalidInputError& e) {
        throw ConfigError(e.what(), path);
    }
    throw ConfigError("expected a number or rational string", path);
}

inline int int_at(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError("expected an integer", path);
    return v.get<int>();
}

inline long long long_at(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError("expected an integer", path);
    return v.get<long long>();
}

inline Vector<Rational> vector_at(const Json& v, int dim, const std::string& path) {
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
        throw ConfigError("expected an array of " + std::to_string(dim) + " entries", path);
    Vector<Rational> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(rational_at(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline Matrix<Rational> matrix_at(const Json& v, int rows, int cols, const std::string& path) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows)
        throw ConfigError("expected a matrix with " + std::to_string(rows) + " rows", path);
    Matrix<Rational> out(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        Vector<Rational> row = vector_at(v[i], cols, row_path);
        for (int j = 0; j < cols; ++j) out(i, j) = row[j];
    }
    return out;
}

inline PolydiscRadii<Rational> radii_at(const Json& v, const std::string& path) {
    return {rational_at(member(v, "stable", path), path + ".stable"),
            rational_at(member(v, "center", path), path + ".center"),
            rational_at(member(v, "unstable", path), path + ".unstable")};
}

inline Vector<Rational> anchor_at(const Json& v, const CycleIndex& ix, const std::string& path) {
    Vector<Rational> stable = vector_at(member(v, "stable", path), ix.stable_dim, path + ".stable");
    Rational center = rational_at(member(v, "center", path), path + ".center");
    Vector<Rational> unstable = vector_at(member(v, "unstable", path), ix.unstable_dim, path + ".unstable");
    return make_point(stable, center, unstable);
}

/// Anchors carry their heteroclinic normal form in the schema itself: the
/// blocks that the normal form pins to zero must be written as exact zeros.
/// Rejecting other values beats silently projecting them away.
inline void require_zero_block(const Vector<Rational>& block, const std::string& path) {
    for (const Rational& x : block)
        if (x != 0) throw ConfigError("this anchor block must be exactly zero", path);
}

inline void require_zero_center(const Rational& x, const std::string& path) {
    if (x != 0) throw ConfigError("this anchor component must be exactly zero", path);
}

inline FixedPointChart<Rational> chart_at(const Json& v, ChartRole role, const CycleIndex& ix,
                                          const std::string& path) {
    FixedPointChart<Rational> chart;
    chart.role = role;
    chart.stable = matrix_at(member(v, "stable", path), ix.stable_dim, ix.stable_dim, path + ".stable");
    chart.center = rational_at(member(v, "center", path), path + ".center");
    chart.unstable =
        matrix_at(member(v, "unstable", path), ix.unstable_dim, ix.unstable_dim, path + ".unstable");
    chart.radii = radii_at(member(v, "radii", path), path + ".radii");
    return chart;
}

inline TransitionChart<Rational> transition_at(const Json& v, ChartRole source, const CycleIndex& ix,
                                               const std::string& path) {
    TransitionChart<Rational> t;
    t.source = source;
    if (v.is_object() && v.contains("steps")) t.steps = int_at(v["steps"], path + ".steps");
    t.stable = matrix_at(member(v, "stable", path), ix.stable_dim, ix.stable_dim, path + ".stable");
    if (v.contains("center_multiplier"))
        t.center_multiplier = rational_at(v["center_multiplier"], path + ".center_multiplier");
    t.unstable =
        matrix_at(member(v, "unstable", path), ix.unstable_dim, ix.unstable_dim, path + ".unstable");
    t.source_anchor = anchor_at(member(v, "source_anchor", path), ix, path + ".source_anchor");
    t.target_anchor = anchor_at(member(v, "target_anchor", path), ix, path + ".target_anchor");
    t.region = radii_at(member(v, "region", path), path + ".region");

    const std::string src = path + ".source_anchor";
    const std::string tgt = path + ".target_anchor";
    require_zero_block(stable_block(t.source_anchor, ix), src + ".stable");
    if (source == ChartRole::P1)
        require_zero_block(unstable_block(t.source_anchor, ix), src + ".unstable");
    else
        require_zero_center(center_block(t.source_anchor, ix), src + ".center");
    require_zero_center(center_block(t.target_anchor, ix), tgt + ".center");
    require_zero_block(unstable_block(t.target_anchor, ix), tgt + ".unstable");
    return t;
}

inline BasicCycle<Rational> cycle_at(const Json& v, const std::string& path) {
    BasicCycle<Rational> cycle;
    const Json& index = member(v, "index", path);
    cycle.index.stable_dim = int_at(member(index, "stable", path + ".index"), path + ".index.stable");
    cycle.index.unstable_dim =
        int_at(member(index, "unstable", path + ".index"), path + ".index.unstable");
    if (cycle.index.stable_dim < 1 || cycle.index.unstable_dim < 1)
        throw ConfigError("dimensions must be at least 1", path + ".index");
    cycle.p1 = chart_at(member(v, "p1", path), ChartRole::P1, cycle.index, path + ".p1");
    cycle.p2 = chart_at(member(v, "p2", path), ChartRole::P2, cycle.index, path + ".p2");
    cycle.t1 = transition_at(member(v, "t1", path), ChartRole::P1, cycle.index, path + ".t1");
    cycle.t2 = transition_at(member(v, "t2", path), ChartRole::P2, cycle.index, path + ".t2");
    return cycle;
}

inline PlannerConfig planner_at(const Json& v, const std::string& path) {
    PlannerConfig config;
    config.corridor_low = to_double(rational_at(member(v, "corridor_low", path), path + ".corridor_low"));
    config.corridor_high =
        to_double(rational_at(member(v, "corridor_high", path), path + ".corridor_high"));
    config.log_cap = to_double(rational_at(member(v, "log_cap", path), path + ".log_cap"));
    if (v.contains("count")) config.count = int_at(v["count"], path + ".count");
    if (v.contains("m_floor")) config.m_floor = int_at(v["m_floor"], path + ".m_floor");
    if (v.contains("search_cap")) config.search_cap = int_at(v["search_cap"], path + ".search_cap");
    return config;
}

inline SequenceSpec sequence_at(const Json& v, const std::string& path) {
    SequenceSpec seq;
    if (v.is_string()) {
        std::string name = v.get<std::string>();
        if (name == "factorial")
            seq.kind = SequenceSpec::Kind::Factorial;
        else if (name == "npow2")
            seq.kind = SequenceSpec::Kind::NTimesPow2;
        else
            throw ConfigError("unknown sequence name \"" + name + "\" (expected factorial or npow2)",
                              path);
        return seq;
    }
    if (v.is_object() && v.contains("table")) {
        seq.kind = SequenceSpec::Kind::Table;
        const Json& table = v["table"];
        if (!table.is_object()) throw ConfigError("expected an object of period -> count", path + ".table");
        for (const auto& [key, value] : table.items()) {
            int period = 0;
            try {
                period = std::stoi(key);
            } catch (const std::exception&) {
                throw ConfigError("table keys must be integer periods", path + ".table." + key);
            }
            if (!value.is_string() && !value.is_number_integer())
                throw ConfigError("expected an integer or integer string", path + ".table." + key);
            seq.table[period] = value.is_string() ? BigInt(value.get<std::string>())
                                                  : BigInt(value.get<long long>());
        }
        return seq;
    }
    throw ConfigError("expected a sequence name or {\"table\": {...}}", path);
}

inline PerturbOptions perturb_at(const Json& v, const std::string& path) {
    PerturbOptions options;
    if (v.contains("epsilon"))
        options.epsilon = to_double(rational_at(v["epsilon"], path + ".epsilon"));
    if (v.contains("support_width"))
        options.support_width = to_double(rational_at(v["support_width"], path + ".support_width"));
    if (v.contains("sequence")) options.sequence = sequence_at(v["sequence"], path + ".sequence");
    return options;
}

inline ReportOptions report_at(const Json& v, const std::string& path) {
    ReportOptions options;
    if (v.contains("bases")) {
        const Json& bases = v["bases"];
        if (!bases.is_array() || bases.empty())
            throw ConfigError("expected a non-empty array of bases", path + ".bases");
        options.bases.clear();
        for (size_t i = 0; i < bases.size(); ++i)
            options.bases.push_back(
                to_double(rational_at(bases[i], path + ".bases[" + std::to_string(i) + "]")));
    }
    return options;
}

} // namespace detail

/// Parses a configuration document.  `origin` only labels error messages.
inline LoadedConfig parse_config(const std::string& text, const std::string& origin = "<config>") {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError(std::string("parse error: ") + e.what(),
                          origin + ":" + std::to_string(line) + ":" + std::to_string(column));
    }
    if (!doc.is_object()) throw ConfigError("top level must be an object", origin);
    const Json& schema = detail::member(doc, "schema", origin);
    if (!schema.is_string() || schema.get<std::string>() != config_schema)
        throw ConfigError(std::string("unsupported schema (expected \"") + config_schema + "\")",
                          origin + ".schema");

    LoadedConfig config;
    config.exact_cycle = detail::cycle_at(detail::member(doc, "cycle", origin), origin + ".cycle");
    config.cycle = approximate_cycle(config.exact_cycle);
    if (doc.contains("planner")) config.planner = detail::planner_at(doc["planner"], origin + ".planner");
    if (doc.contains("perturb")) config.perturb = detail::perturb_at(doc["perturb"], origin + ".perturb");
    if (doc.contains("report")) config.report = detail::report_at(doc["report"], origin + ".report");
    return config;
}

inline LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file", path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

namespace detail {

inline Json rational_json(const Rational& x) { return Json(format_rational(x)); }

inline Json vector_json(const Vector<Rational>& v) {
    Json out = Json::array();
    for (const Rational& x : v) out.push_back(rational_json(x));
    return out;
}

inline Json matrix_json(const Matrix<Rational>& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

inline Json radii_json(const PolydiscRadii<Rational>& r) {
    Json out = Json::object();
    out["stable"] = rational_json(r.stable);
    out["center"] = rational_json(r.center);
    out["unstable"] = rational_json(r.unstable);
    return out;
}

inline Json anchor_json(const Vector<Rational>& anchor, const CycleIndex& ix) {
    Json out = Json::object();
    out["stable"] = vector_json(stable_block(anchor, ix));
    out["center"] = rational_json(center_block(anchor, ix));
    out["unstable"] = vector_json(unstable_block(anchor, ix));
    return out;
}

inline Json chart_json(const FixedPointChart<Rational>& c) {
    Json out = Json::object();
    out["stable"] = matrix_json(c.stable);
    out["center"] = rational_json(c.center);
    out["unstable"] = matrix_json(c.unstable);
    out["radii"] = radii_json(c.radii);
    return out;
}

inline Json transition_json(const TransitionChart<Rational>& t, const CycleIndex& ix) {
    Json out = Json::object();
    out["steps"] = t.steps;
    out["stable"] = matrix_json(t.stable);
    out["center_multiplier"] = rational_json(t.center_multiplier);
    out["unstable"] = matrix_json(t.unstable);
    out["source_anchor"] = anchor_json(t.source_anchor, ix);
    out["target_anchor"] = anchor_json(t.target_anchor, ix);
    out["region"] = radii_json(t.region);
    return out;
}

inline Json sequence_json(const SequenceSpec& seq) {
    switch (seq.kind) {
    case SequenceSpec::Kind::Factorial:
        return Json("factorial");
    case SequenceSpec::Kind::NTimesPow2:
        return Json("npow2");
    case SequenceSpec::Kind::Table: {
        Json table = Json::object();
        for (const auto& [period, count] : seq.table) table[std::to_string(period)] = count.str();
        Json out = Json::object();
        out["table"] = table;
        return out;
    }
    }
    throw Error("sequence_json: unreachable");
}

} // namespace detail

/// Emits a document that parses back to the same configuration bit-exactly
/// (rationals are printed in canonical form, doubles as exact rationals).
inline std::string serialize_config(const LoadedConfig& config) {
    const CycleIndex& ix = config.exact_cycle.index;
    Json doc = Json::object();
    doc["schema"] = config_schema;

    Json cycle = Json::object();
    Json index = Json::object();
    index["stable"] = ix.stable_dim;
    index["unstable"] = ix.unstable_dim;
    cycle["index"] = index;
    cycle["p1"] = detail::chart_json(config.exact_cycle.p1);
    cycle["p2"] = detail::chart_json(config.exact_cycle.p2);
    cycle["t1"] = detail::transition_json(config.exact_cycle.t1, ix);
    cycle["t2"] = detail::transition_json(config.exact_cycle.t2, ix);
    doc["cycle"] = cycle;

    if (config.planner) {
        Json planner = Json::object();
        planner["corridor_low"] = detail::rational_json(exact_rational(config.planner->corridor_low));
        planner["corridor_high"] = detail::rational_json(exact_rational(config.planner->corridor_high));
        planner["log_cap"] = detail::rational_json(exact_rational(config.planner->log_cap));
        planner["count"] = config.planner->count;
        planner["m_floor"] = config.planner->m_floor;
        planner["search_cap"] = config.planner->search_cap;
        doc["planner"] = planner;
    }
    if (config.perturb) {
        Json perturb = Json::object();
        perturb["epsilon"] = detail::rational_json(exact_rational(config.perturb->epsilon));
        perturb["support_width"] = detail::rational_json(exact_rational(config.perturb->support_width));
        perturb["sequence"] = detail::sequence_json(config.perturb->sequence);
        doc["perturb"] = perturb;
    }
    if (config.report) {
        Json report = Json::object();
        Json bases = Json::array();
        for (double r : config.report->bases) bases.push_back(detail::rational_json(exact_rational(r)));
        report["bases"] = bases;
        doc["report"] = report;
    }
    return doc.dump(2) + "\n";
}

} // namespace shc
