// shc: command-line front end for the cycle laboratory.
//
// Subcommands load a cycle configuration, run one pipeline (validation,
// closed-form solving, period planning, periodic-point census, perturbation
// cascade, growth reporting) and export the result twice: <command>.json for
// machines and <command>.csv for plotting.  Identical inputs produce
// byte-identical outputs; floats are printed with 17 significant digits.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "shc/shc.hpp"

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(long double x) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17Lg", x);
    return buf;
}

shc::Json json_vector(const shc::Vector<double>& v) {
    shc::Json out = shc::Json::array();
    for (double x : v) out.push_back(fmt(x));
    return out;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

uint64_t fnv1a64(const std::string& bytes, uint64_t hash = 14695981039346656037ull) {
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hex64(uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

struct CliContext {
    std::string config_path;
    std::string config_text;
    std::string out_dir = ".";
    long long budget = shc::default_itinerary_budget;
    std::string digest;
};

shc::Json envelope(const std::string& command, const CliContext& ctx) {
    shc::Json doc = shc::Json::object();
    doc["schema"] = shc::config_schema;
    doc["command"] = command;
    doc["input_digest"] = ctx.digest;
    return doc;
}

void write_outputs(const CliContext& ctx, const std::string& command, const shc::Json& doc,
                   const std::vector<std::string>& csv_lines) {
    namespace fs = std::filesystem;
    fs::create_directories(ctx.out_dir);
    {
        std::ofstream out(fs::path(ctx.out_dir) / (command + ".json"), std::ios::binary);
        out << doc.dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(ctx.out_dir) / (command + ".csv"), std::ios::binary);
        for (const std::string& line : csv_lines) out << line << "\n";
    }
}

const char* error_kind(const shc::Error& e) {
    if (dynamic_cast<const shc::ConfigError*>(&e)) return "config";
    if (dynamic_cast<const shc::ResonanceError*>(&e)) return "resonance";
    if (dynamic_cast<const shc::DegenerateLoopError*>(&e)) return "degenerate-loop";
    if (dynamic_cast<const shc::RegionError*>(&e)) return "region";
    if (dynamic_cast<const shc::BudgetExceededError*>(&e)) return "budget";
    if (dynamic_cast<const shc::PerturbationBudgetError*>(&e)) return "perturbation-budget";
    if (dynamic_cast<const shc::SearchExhaustedError*>(&e)) return "search-exhausted";
    if (dynamic_cast<const shc::SingularMatrixError*>(&e)) return "singular-matrix";
    if (dynamic_cast<const shc::InvalidInputError*>(&e)) return "invalid-input";
    return "error";
}

shc::LoadedConfig require_config(const CliContext& ctx) {
    if (ctx.config_path.empty())
        throw shc::ConfigError("this command needs --config", "<args>");
    return shc::parse_config(ctx.config_text, ctx.config_path);
}

// --- validate ----------------------------------------------------------------

int run_validate(const CliContext& ctx, int max_coeff) {
    shc::LoadedConfig cfg = require_config(ctx);
    shc::ValidationReport report = shc::validate_cycle(cfg.cycle);
    std::vector<shc::ResonancePair> resonances;
    if (report.passed()) resonances = shc::resonance_check(cfg.cycle, max_coeff);

    shc::Json doc = envelope("validate", ctx);
    doc["passed"] = report.passed();
    auto issues = [](const std::vector<shc::ValidationIssue>& list) {
        shc::Json arr = shc::Json::array();
        for (const auto& issue : list) {
            shc::Json row = shc::Json::object();
            row["axiom"] = issue.axiom;
            row["detail"] = issue.detail;
            row["measured"] = fmt(issue.measured);
            arr.push_back(row);
        }
        return arr;
    };
    doc["failures"] = issues(report.failures);
    doc["warnings"] = issues(report.warnings);
    shc::Json res = shc::Json::array();
    for (const auto& pair : resonances) {
        shc::Json row = shc::Json::object();
        row["a"] = pair.a;
        row["b"] = pair.b;
        row["value"] = fmt(pair.value);
        res.push_back(row);
    }
    doc["resonances"] = res;

    std::vector<std::string> csv{"kind,id,value,detail"};
    for (const auto& issue : report.failures)
        csv.push_back("failure," + issue.axiom + "," + fmt(issue.measured) + "," + csv_escape(issue.detail));
    for (const auto& issue : report.warnings)
        csv.push_back("warning," + issue.axiom + "," + fmt(issue.measured) + "," + csv_escape(issue.detail));
    for (const auto& pair : resonances)
        csv.push_back("resonance," + std::to_string(pair.a) + ":" + std::to_string(pair.b) + "," +
                      fmt(pair.value) + ",near-cancellation of center multiplier logs");
    write_outputs(ctx, "validate", doc, csv);
    return report.passed() ? 0 : 1;
}

// --- solve -------------------------------------------------------------------

int run_solve(const CliContext& ctx, int m1, int m2) {
    shc::LoadedConfig cfg = require_config(ctx);
    shc::PeriodicSolution sol = shc::solve_loop(cfg.cycle, {m1, m2});
    shc::VerificationReport check = shc::verify_solution(cfg.cycle, sol);

    shc::Json doc = envelope("solve", ctx);
    doc["m1"] = sol.params.m1;
    doc["m2"] = sol.params.m2;
    doc["period"] = sol.period;
    doc["loop_multiplier"] = fmt(sol.loop_multiplier);
    doc["center_exponent"] = fmt(sol.center_exponent);
    doc["analytic_realizable"] = sol.analytic_realizable;
    doc["stable_offset"] = json_vector(sol.stable_offset);
    doc["center_offset"] = fmt(sol.center_offset);
    doc["unstable_offset"] = json_vector(sol.unstable_offset);
    doc["start_point"] = json_vector(shc::solution_start_point(cfg.cycle, sol));
    shc::Json verification = shc::Json::object();
    verification["max_component_error"] = fmt(check.max_component_error);
    verification["periodicity_error"] = fmt(check.periodicity_error);
    verification["trace_all_valid"] = check.trace_all_valid;
    verification["empirical_realizable"] = check.empirical_realizable;
    verification["failure"] = check.failure;
    doc["verification"] = verification;

    std::vector<std::string> csv{
        "m1,m2,period,loop_multiplier,center_exponent,analytic_realizable,empirical_realizable,"
        "max_component_error,periodicity_error"};
    csv.push_back(std::to_string(sol.params.m1) + "," + std::to_string(sol.params.m2) + "," +
                  std::to_string(sol.period) + "," + fmt(sol.loop_multiplier) + "," +
                  fmt(sol.center_exponent) + "," + (sol.analytic_realizable ? "true" : "false") + "," +
                  (check.empirical_realizable ? "true" : "false") + "," +
                  fmt(check.max_component_error) + "," + fmt(check.periodicity_error));
    write_outputs(ctx, "solve", doc, csv);
    return 0;
}

// --- plan --------------------------------------------------------------------

shc::PlannerConfig planner_config_for(const shc::LoadedConfig& cfg, int count, bool count_given,
                                      double low, bool low_given, double high, bool high_given) {
    shc::PlannerConfig planner;
    if (cfg.planner)
        planner = *cfg.planner;
    else
        planner = shc::interval_defaults(cfg.cycle, count_given ? count : 100);
    if (count_given) planner.count = count;
    if (low_given) planner.corridor_low = low;
    if (high_given) planner.corridor_high = high;
    return planner;
}

shc::Json planner_json(const shc::PlannerConfig& planner) {
    shc::Json out = shc::Json::object();
    out["corridor_low"] = fmt(planner.corridor_low);
    out["corridor_high"] = fmt(planner.corridor_high);
    out["log_cap"] = fmt(planner.log_cap);
    out["count"] = planner.count;
    out["m_floor"] = planner.m_floor;
    out["search_cap"] = planner.search_cap;
    return out;
}

int run_plan(const CliContext& ctx, const shc::PlannerConfig& planner) {
    shc::LoadedConfig cfg = require_config(ctx);
    shc::ExhaustionPlan plan = shc::plan_exhaustion(cfg.cycle, planner);
    shc::SeparationReport separation = shc::separation_report(plan);

    shc::Json doc = envelope("plan", ctx);
    doc["planner"] = planner_json(planner);
    doc["first_period"] = plan.first_period;
    shc::Json steps = shc::Json::array();
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        const shc::PeriodicSolution& sol = plan.steps[i];
        shc::Json row = shc::Json::object();
        row["m1"] = sol.params.m1;
        row["m2"] = sol.params.m2;
        row["period"] = sol.period;
        row["corridor_value"] = fmt(shc::corridor_value(cfg.cycle, sol.params));
        row["center_exponent"] = fmt(sol.center_exponent);
        row["center_offset"] = fmt(sol.center_offset);
        row["stable_norm"] = fmt(shc::norm(sol.stable_offset));
        row["unstable_norm"] = fmt(shc::norm(sol.unstable_offset));
        row["verified"] = plan.checks[i].empirical_realizable;
        steps.push_back(row);
    }
    doc["steps"] = steps;
    shc::Json sep = shc::Json::object();
    sep["min_pairwise_distance"] = fmt(separation.min_pairwise_distance);
    sep["all_distinct"] = separation.all_distinct;
    shc::Json rows = shc::Json::array();
    for (const shc::SeparationRow& r : separation.rows) {
        shc::Json row = shc::Json::object();
        row["period"] = r.period;
        row["min_distance_to_later"] = fmt(r.min_distance_to_later);
        row["distance_to_limit_segment"] = fmt(r.distance_to_limit_segment);
        rows.push_back(row);
    }
    sep["rows"] = rows;
    doc["separation"] = sep;

    std::vector<std::string> csv{
        "m1,m2,period,corridor_value,center_exponent,center_offset,stable_norm,unstable_norm,"
        "min_distance_to_later,distance_to_limit_segment"};
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        const shc::PeriodicSolution& sol = plan.steps[i];
        const shc::SeparationRow& r = separation.rows[i];
        csv.push_back(std::to_string(sol.params.m1) + "," + std::to_string(sol.params.m2) + "," +
                      std::to_string(sol.period) + "," +
                      fmt(shc::corridor_value(cfg.cycle, sol.params)) + "," +
                      fmt(sol.center_exponent) + "," + fmt(sol.center_offset) + "," +
                      fmt(shc::norm(sol.stable_offset)) + "," + fmt(shc::norm(sol.unstable_offset)) +
                      "," + fmt(r.min_distance_to_later) + "," + fmt(r.distance_to_limit_segment));
    }
    write_outputs(ctx, "plan", doc, csv);
    return 0;
}

// --- census ------------------------------------------------------------------

int run_census(const CliContext& ctx, int n_min, int n_max, int max_loops) {
    shc::LoadedConfig cfg = require_config(ctx);
    shc::GrowthTable table = shc::count_table(cfg.cycle, n_min, n_max, max_loops, ctx.budget);

    shc::Json doc = envelope("census", ctx);
    doc["n_min"] = n_min;
    doc["n_max"] = n_max;
    doc["max_loops"] = max_loops;
    shc::Json counts = shc::Json::object();
    for (const auto& [n, count] : table.counts) counts[std::to_string(n)] = count.str();
    doc["counts"] = counts;
    shc::Json orbits = shc::Json::array();
    for (int n = n_min; n <= n_max; ++n) {
        auto points = shc::enumerate_periodic_points(cfg.cycle, n, max_loops, ctx.budget);
        shc::Json per_period = shc::Json::object();
        per_period["period"] = n;
        shc::Json list = shc::Json::array();
        for (const shc::PeriodicPoint& p : points) {
            shc::Json loops = shc::Json::array();
            for (const shc::LoopParams& lp : p.itinerary.loops)
                loops.push_back(shc::Json::array({lp.m1, lp.m2}));
            list.push_back(loops);
        }
        per_period["orbits"] = list;
        orbits.push_back(per_period);
    }
    doc["orbits"] = orbits;

    std::vector<std::string> csv{"period,count"};
    for (const auto& [n, count] : table.counts)
        csv.push_back(std::to_string(n) + "," + count.str());
    write_outputs(ctx, "census", doc, csv);
    return 0;
}

// --- perturb -----------------------------------------------------------------

int run_perturb(const CliContext& ctx, const shc::PlannerConfig& planner,
                shc::PerturbOptions options, bool include_baseline) {
    shc::LoadedConfig cfg = require_config(ctx);
    shc::ExhaustionPlan plan = shc::plan_exhaustion(cfg.cycle, planner);

    shc::CascadeOptions cascade;
    cascade.include_baseline = include_baseline;
    cascade.budget = ctx.budget;
    cascade.support_width = options.support_width;
    shc::GrowthTable table =
        shc::perturbed_count_table(cfg.cycle, plan, options.sequence, options.epsilon, cascade);

    shc::Json doc = envelope("perturb", ctx);
    doc["epsilon"] = fmt(options.epsilon);
    doc["support_width"] = fmt(options.support_width);
    doc["sequence"] = shc::detail::sequence_json(options.sequence);
    doc["planner"] = planner_json(planner);
    shc::Json steps = shc::Json::array();
    std::vector<std::string> csv{"period,center_exponent,budget,count"};
    for (const shc::PeriodicSolution& sol : plan.steps) {
        shc::CocycleAdjustment adj =
            shc::zero_center_exponent(shc::orbit_center_cocycle(cfg.cycle, sol), options.epsilon);
        shc::Json row = shc::Json::object();
        row["period"] = sol.period;
        row["center_exponent"] = fmt(sol.center_exponent);
        row["budget"] = fmt(adj.epsilon_used);
        row["count"] = table.counts.at(sol.period).str();
        steps.push_back(row);
        csv.push_back(std::to_string(sol.period) + "," + fmt(sol.center_exponent) + "," +
                      fmt(adj.epsilon_used) + "," + table.counts.at(sol.period).str());
    }
    doc["steps"] = steps;
    shc::Json counts = shc::Json::object();
    for (const auto& [n, count] : table.counts) counts[std::to_string(n)] = count.str();
    doc["counts"] = counts;
    write_outputs(ctx, "perturb", doc, csv);
    return 0;
}

// --- report ------------------------------------------------------------------

shc::GrowthTable load_counts_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw shc::ConfigError("cannot open counts file", path);
    shc::Json doc;
    try {
        doc = shc::Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw shc::ConfigError(std::string("parse error: ") + e.what(), path);
    }
    const shc::Json& counts = doc.is_object() && doc.contains("counts") ? doc["counts"] : doc;
    if (!counts.is_object())
        throw shc::ConfigError("expected an object mapping period -> count", path);
    shc::GrowthTable table;
    for (const auto& [key, value] : counts.items()) {
        int period = 0;
        try {
            period = std::stoi(key);
        } catch (const std::exception&) {
            throw shc::ConfigError("count keys must be integer periods", path + ":" + key);
        }
        if (value.is_string())
            table.counts[period] = shc::BigInt(value.get<std::string>());
        else if (value.is_number_integer())
            table.counts[period] = shc::BigInt(value.get<long long>());
        else
            throw shc::ConfigError("counts must be integers or integer strings", path + ":" + key);
    }
    return table;
}

int run_report(const CliContext& ctx, const shc::GrowthTable& table, const std::vector<double>& bases) {
    shc::GrowthReport report = shc::growth_report(table, bases);

    shc::Json doc = envelope("report", ctx);
    shc::Json counts = shc::Json::object();
    for (const auto& [n, count] : table.counts) counts[std::to_string(n)] = count.str();
    doc["counts"] = counts;
    shc::Json series_arr = shc::Json::array();
    std::vector<std::string> csv{"base,period,ratio,running_min"};
    for (const shc::GrowthSeries& series : report.series) {
        shc::Json s = shc::Json::object();
        s["base"] = fmt(series.base);
        s["divergence"] = series.divergence;
        shc::Json periods = shc::Json::array();
        shc::Json ratios = shc::Json::array();
        shc::Json running = shc::Json::array();
        for (size_t i = 0; i < series.periods.size(); ++i) {
            periods.push_back(series.periods[i]);
            ratios.push_back(fmt(series.ratios[i]));
            running.push_back(fmt(series.running_min[i]));
            csv.push_back(fmt(series.base) + "," + std::to_string(series.periods[i]) + "," +
                          fmt(series.ratios[i]) + "," + fmt(series.running_min[i]));
        }
        s["periods"] = periods;
        s["ratios"] = ratios;
        s["running_min"] = running;
        series_arr.push_back(s);
    }
    doc["series"] = series_arr;
    write_outputs(ctx, "report", doc, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for center-neutral heteroclinic cycle models"};
    app.require_subcommand(1);

    CliContext ctx;
    app.add_option("--config", ctx.config_path, "Cycle configuration file (JSON, schema shc-1)");
    app.add_option("--out", ctx.out_dir, "Directory for <command>.json and <command>.csv")
        ->default_val(".");
    int threads = 1;
    app.add_option("--threads", threads, "Worker thread cap (results are identical for any value)")
        ->check(CLI::PositiveNumber);

    auto* validate_cmd = app.add_subcommand("validate", "Check every model axiom and scan for resonances");
    int max_coeff = 8;
    validate_cmd->add_option("--max-coeff", max_coeff, "Resonance scan coefficient bound")
        ->check(CLI::PositiveNumber);

    auto* solve_cmd = app.add_subcommand("solve", "Solve one loop's periodic orbit in closed form");
    int m1 = 0, m2 = 0;
    solve_cmd->add_option("--m1", m1, "Iterates spent in the center-expanding chart")->required();
    solve_cmd->add_option("--m2", m2, "Iterates spent in the center-contracting chart")->required();

    auto* plan_cmd = app.add_subcommand("plan", "Plan consecutive-period orbits inside the corridor");
    int plan_count = 100;
    double corridor_low = 0.0, corridor_high = 0.0;
    auto* plan_count_opt = plan_cmd->add_option("--count", plan_count, "Number of consecutive periods");
    auto* low_opt = plan_cmd->add_option("--L", corridor_low, "Corridor lower bound (log scale)");
    auto* high_opt = plan_cmd->add_option("--Lp", corridor_high, "Corridor upper bound (log scale)");

    auto* census_cmd = app.add_subcommand("census", "Count periodic points per period by brute force");
    int n_min = 0, n_max = 0, max_loops = 1;
    census_cmd->add_option("--nmin", n_min, "Smallest period")->required();
    census_cmd->add_option("--nmax", n_max, "Largest period")->required();
    census_cmd->add_option("--max-loops", max_loops, "Longest multi-loop excursion considered")
        ->check(CLI::PositiveNumber);

    auto* perturb_cmd = app.add_subcommand("perturb", "Run the flatten-and-spawn perturbation cascade");
    double epsilon = 0.01, support_width = 0.02;
    std::string seq_name;
    int perturb_count = 100;
    bool include_baseline = false;
    auto* eps_opt = perturb_cmd->add_option("--epsilon", epsilon, "C1 perturbation budget per step");
    auto* width_opt = perturb_cmd->add_option("--support-width", support_width, "Desired bump support width");
    auto* seq_opt = perturb_cmd->add_option("--a-seq", seq_name, "Spawned orbit counts: factorial or npow2");
    auto* perturb_count_opt = perturb_cmd->add_option("--count", perturb_count, "Plan length to cascade over");
    perturb_cmd->add_flag("--include-baseline", include_baseline, "Add the unperturbed census on top");

    auto* report_cmd = app.add_subcommand("report", "Compare a census against exponential growth");
    std::string counts_path, report_seq;
    int j_min = 0, j_max = 0;
    std::vector<double> bases;
    report_cmd->add_option("--counts", counts_path, "JSON census file (census/perturb output or flat map)");
    auto* rseq_opt = report_cmd->add_option("--seq", report_seq, "Synthetic counts: factorial or npow2");
    auto* jmin_opt = report_cmd->add_option("--jmin", j_min, "First period of the synthetic census");
    auto* jmax_opt = report_cmd->add_option("--jmax", j_max, "Last period of the synthetic census");
    auto* bases_opt = report_cmd->add_option("--r", bases, "Comparison bases r > 1")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (const char* env = std::getenv("SHC_BUDGET")) {
        char* end = nullptr;
        long long value = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || value < 1) {
            std::cerr << "shc: SHC_BUDGET must be a positive integer, got \"" << env << "\"\n";
            return 2;
        }
        ctx.budget = value;
    }

    if (!ctx.config_path.empty()) {
        std::ifstream in(ctx.config_path, std::ios::binary);
        if (!in) {
            std::cerr << "shc: cannot open config file " << ctx.config_path << "\n";
            return 1;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        ctx.config_text = buffer.str();
    }
    // The digest covers the config contents plus every argument that can
    // change a result.  Where outputs land (--out), how they are computed
    // (--threads) and where the config came from (--config, its bytes are
    // already hashed) must not perturb it, so reruns stay byte-identical.
    uint64_t digest = fnv1a64(ctx.config_text);
    for (int i = 1; i < argc; ++i) {
        std::string token = argv[i];
        auto is_ignored = [&](const std::string& name) {
            return token == name || token.rfind(name + "=", 0) == 0;
        };
        if (is_ignored("--out") || is_ignored("--threads") || is_ignored("--config")) {
            if (token.find('=') == std::string::npos) ++i;
            continue;
        }
        digest = fnv1a64(token + '\0', digest);
    }
    ctx.digest = hex64(digest);

    try {
        if (*validate_cmd) return run_validate(ctx, max_coeff);
        if (*solve_cmd) return run_solve(ctx, m1, m2);
        if (*plan_cmd || *perturb_cmd) {
            shc::LoadedConfig cfg = require_config(ctx);
            if (*plan_cmd) {
                shc::PlannerConfig planner = planner_config_for(
                    cfg, plan_count, plan_count_opt->count() > 0, corridor_low, low_opt->count() > 0,
                    corridor_high, high_opt->count() > 0);
                return run_plan(ctx, planner);
            }
            shc::PlannerConfig planner =
                planner_config_for(cfg, perturb_count, perturb_count_opt->count() > 0, 0.0, false, 0.0, false);
            shc::PerturbOptions options;
            if (cfg.perturb) options = *cfg.perturb;
            if (eps_opt->count() > 0) options.epsilon = epsilon;
            if (width_opt->count() > 0) options.support_width = support_width;
            if (seq_opt->count() > 0) {
                if (seq_name == "factorial")
                    options.sequence.kind = shc::SequenceSpec::Kind::Factorial;
                else if (seq_name == "npow2")
                    options.sequence.kind = shc::SequenceSpec::Kind::NTimesPow2;
                else {
                    std::cerr << "shc: --a-seq must be factorial or npow2\n";
                    return 2;
                }
            }
            return run_perturb(ctx, planner, options, include_baseline);
        }
        if (*census_cmd) return run_census(ctx, n_min, n_max, max_loops);
        if (*report_cmd) {
            shc::GrowthTable table;
            if (!counts_path.empty()) {
                table = load_counts_file(counts_path);
            } else if (rseq_opt->count() > 0) {
                if (jmin_opt->count() == 0 || jmax_opt->count() == 0) {
                    std::cerr << "shc: --seq needs --jmin and --jmax\n";
                    return 2;
                }
                shc::SequenceSpec seq;
                if (report_seq == "factorial")
                    seq.kind = shc::SequenceSpec::Kind::Factorial;
                else if (report_seq == "npow2")
                    seq.kind = shc::SequenceSpec::Kind::NTimesPow2;
                else {
                    std::cerr << "shc: --seq must be factorial or npow2\n";
                    return 2;
                }
                if (j_min > j_max) {
                    std::cerr << "shc: --jmin must not exceed --jmax\n";
                    return 2;
                }
                for (int j = j_min; j <= j_max; ++j) table.counts[j] = shc::BigInt(j) * seq(j);
            } else {
                std::cerr << "shc: report needs --counts FILE or --seq NAME --jmin A --jmax B\n";
                return 2;
            }
            std::vector<double> use_bases = bases;
            if (bases_opt->count() == 0) {
                use_bases = {2.0, 5.0, 10.0};
                if (!ctx.config_path.empty()) {
                    shc::LoadedConfig cfg = require_config(ctx);
                    if (cfg.report) use_bases = cfg.report->bases;
                }
            }
            return run_report(ctx, table, use_bases);
        }
    } catch (const shc::Error& e) {
        shc::Json err = shc::Json::object();
        shc::Json body = shc::Json::object();
        body["type"] = error_kind(e);
        body["message"] = e.what();
        err["error"] = body;
        std::cout << err.dump(2) << "\n";
        std::cerr << "shc: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "shc: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
