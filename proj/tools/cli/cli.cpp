#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "output.hpp"
#include "sublinear/axioms.hpp"
#include "sublinear/csv.hpp"
#include "sublinear/envelope.hpp"
#include "sublinear/error.hpp"
#include "sublinear/format.hpp"
#include "sublinear/function_spec.hpp"
#include "sublinear/json.hpp"
#include "sublinear/lln.hpp"
#include "sublinear/maximal.hpp"
#include "sublinear/mle.hpp"
#include "sublinear/scenario.hpp"

namespace sublinear::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kToolName = "sublinear";

// Options shared by every command.
struct Common {
    std::uint64_t seed = 0;
    std::string output;
    std::string format;
};

struct AxiomOpts {
    std::size_t cases = 1000;
    std::string family;
};

struct EvalOpts {
    std::optional<double> mu_lo;
    std::optional<double> mu_hi;
    std::string family;
    std::string fn;
    double step = 1e-3;
    bool refine = false;
    std::optional<double> a;
    std::optional<double> b;
};

struct SimOpts {
    double mu_lo = 0.0;
    double mu_hi = 0.0;
    std::string fn;
    std::vector<std::string> policies;
    std::string noise = "none";
    std::size_t n_max = 10000;
    std::size_t reps = 200;
    std::vector<std::size_t> schedule;
    double step = 1e-3;
    bool refine = false;
};

struct InputOpts {
    std::string input;
    std::string column = "0";
    std::string timestamp_column;
    bool header = false;
};

struct EnvelopeOpts {
    std::size_t window = 0;
    std::size_t num_windows = 0;
    std::optional<std::size_t> t_index;
    bool no_demean = false;
};

// Rendered output of one command.
struct Output {
    json doc;                               // json format
    std::optional<CsvTable> table;          // csv format
    std::vector<std::string> csv_comments;  // extra "# " lines for csv
    int exit_code = kSuccess;
};

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::argument: return "validation";
        case ErrorKind::data: return "data";
        case ErrorKind::length: return "length";
        case ErrorKind::evaluation: return "evaluation";
        case ErrorKind::simulation: return "simulation";
    }
    return "internal";
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::argument:
        case ErrorKind::simulation:
            return kValidationError;
        case ErrorKind::data:
        case ErrorKind::length:
        case ErrorKind::evaluation:
            return kDataError;
    }
    return kInternalError;
}

void report_error(std::ostream& err, int code, std::string_view kind, std::string message) {
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::replace(message.begin(), message.end(), '"', '\'');
    err << "error: code=" << code << " kind=" << kind << " message=\"" << message << "\"\n";
}

std::string num(double v) { return format_number(v); }

// Flat effective configuration of the selected subcommand: every option
// with its given or default value, minus the output location.
ConfigMap effective_config(const CLI::App& sub) {
    ConfigMap config;
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help" || name == "output") {
            continue;
        }
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) {
                value += (value.empty() ? "" : ",") + r;
            }
        } else if (opt->get_expected_min() == 0) {
            value = "false";  // flag not given
        } else {
            value = opt->get_default_str();
        }
        config[name] = value;
    }
    return config;
}

MaximalDist interval_of(double lo, double hi) { return MaximalDist(lo, hi); }

// constant at both endpoints and the midpoint, plus the endpoint alternation.
std::vector<MeanPolicy> default_policies(const MaximalDist& d) {
    if (d.degenerate()) {
        return {MeanPolicy::constant(d.mu_lo())};
    }
    return {MeanPolicy::constant(d.mu_lo()), MeanPolicy::constant((d.mu_lo() + d.mu_hi()) / 2.0),
            MeanPolicy::constant(d.mu_hi()), MeanPolicy::periodic({d.mu_lo(), d.mu_hi()})};
}

std::vector<MeanPolicy> policies_from(const SimOpts& o, const MaximalDist& d) {
    std::vector<MeanPolicy> out;
    for (const auto& p : o.policies) {
        out.push_back(MeanPolicy::parse(p));
    }
    if (out.empty()) {
        out = default_policies(d);
    }
    for (const auto& p : out) {
        p.validate(d);
    }
    return out;
}

CsvColumns columns_from(const InputOpts& o) {
    CsvColumns c;
    c.value_column = o.column;
    c.has_header = o.header;
    if (!o.timestamp_column.empty()) {
        c.timestamp_column = o.timestamp_column;
    }
    return c;
}

json rows_json(const std::vector<ReportRow>& rows, bool with_violation) {
    json out = json::array();
    for (const auto& r : rows) {
        json row{{"n", r.n},
                 {"policy_id", r.policy_id},
                 {"estimate", r.estimate},
                 {"target_or_bound", r.target_or_bound},
                 {"gap", r.gap},
                 {"stderr", r.std_error}};
        if (with_violation) {
            row["violation"] = r.violation;
        }
        out.push_back(std::move(row));
    }
    return out;
}

CsvTable rows_table(const std::vector<ReportRow>& rows) {
    CsvTable t({"n", "policy_id", "estimate", "target_or_bound", "gap", "stderr"});
    for (const auto& r : rows) {
        t.add_row({std::to_string(r.n), r.policy_id, num(r.estimate), num(r.target_or_bound),
                   num(r.gap), num(r.std_error)});
    }
    return t;
}

Output run_verify_axioms(const AxiomOpts& o, const Common& c) {
    AxiomSuiteConfig cfg;
    cfg.cases = o.cases;
    cfg.seed = c.seed;
    if (!o.family.empty()) {
        cfg.family = load_family(o.family);
    }
    if (cfg.cases == 0) {
        throw ArgumentError("--cases must be at least 1");
    }
    const AxiomReport report = verify_axioms(cfg);

    Output out;
    json axioms = json::array();
    CsvTable table({"axiom", "checked", "failures", "worst_violation"});
    for (const auto& a : report.axioms) {
        axioms.push_back({{"name", a.name},
                          {"checked", a.checked},
                          {"failures", a.failures},
                          {"worst_violation", a.worst_violation}});
        table.add_row({a.name, std::to_string(a.checked), std::to_string(a.failures),
                       num(a.worst_violation)});
    }
    out.doc = {{"cases", report.cases},
               {"tolerance", kAxiomTolerance},
               {"all_passed", report.all_passed()},
               {"axioms", std::move(axioms)}};
    out.table = std::move(table);
    out.csv_comments.push_back(std::string("all_passed=") + (report.all_passed() ? "true" : "false"));
    out.exit_code = report.all_passed() ? kSuccess : kInternalError;
    return out;
}

Output run_eval(const EvalOpts& o) {
    Output out;
    if (!o.family.empty()) {
        const ScenarioFamily fam = load_family(o.family);
        double radius = 0.0;
        for (const auto& m : fam.measures()) {
            for (const auto& a : m.atoms()) {
                radius = std::max(radius, std::abs(a.point));
            }
        }
        const auto f = parse_function(o.fn, radius);
        const SublinearValue v = sublinear_expect(fam, f);
        out.doc = {{"mode", "family"},
                   {"fn", o.fn},
                   {"measures", fam.size()},
                   {"value", v.value},
                   {"attaining_index", v.attaining_index}};
        CsvTable t({"mode", "value", "attaining_index"});
        t.add_row({"family", num(v.value), std::to_string(v.attaining_index)});
        out.table = std::move(t);
        return out;
    }

    if (!o.mu_lo || !o.mu_hi) {
        throw ArgumentError("eval needs either --family or both --mu-lo and --mu-hi");
    }
    const MaximalDist d = interval_of(*o.mu_lo, *o.mu_hi);
    const GridSpec g{o.step, o.refine};
    const double reach = std::max(std::abs(d.mu_lo()), std::abs(d.mu_hi()));

    if (o.a || o.b) {
        if (!o.a || !o.b) {
            throw ArgumentError("convolution needs both --a and --b");
        }
        const double scale = *o.a + *o.b;
        const auto f = parse_function(o.fn, scale * reach);
        const BoundedValue conv = convolve_scaled(d, *o.a, *o.b, f, g);
        const BoundedLipschitzFn scaled{[&f, scale](double x) { return f(scale * x); },
                                        f.lipschitz_const * scale, f.bound};
        const IntervalMax ref = eval_maximal(d, scaled, g);
        out.doc = {{"mode", "convolution"},
                   {"fn", o.fn},
                   {"mu_lo", d.mu_lo()},
                   {"mu_hi", d.mu_hi()},
                   {"a", *o.a},
                   {"b", *o.b},
                   {"value", conv.value},
                   {"error_bound", conv.error_bound},
                   {"scaled_value", ref.value},
                   {"scaled_error_bound", ref.error_bound}};
        CsvTable t({"mode", "value", "error_bound", "scaled_value", "scaled_error_bound"});
        t.add_row({"convolution", num(conv.value), num(conv.error_bound), num(ref.value),
                   num(ref.error_bound)});
        out.table = std::move(t);
        return out;
    }

    const auto f = parse_function(o.fn, reach);
    const IntervalMax m = eval_maximal(d, f, g);
    out.doc = {{"mode", "maximal"},   {"fn", o.fn},          {"mu_lo", d.mu_lo()},
               {"mu_hi", d.mu_hi()},  {"value", m.value},    {"argmax", m.argmax},
               {"error_bound", m.error_bound}};
    CsvTable t({"mode", "value", "argmax", "error_bound"});
    t.add_row({"maximal", num(m.value), num(m.argmax), num(m.error_bound)});
    out.table = std::move(t);
    return out;
}

Output run_lln(const SimOpts& o, const Common& c) {
    const MaximalDist d = interval_of(o.mu_lo, o.mu_hi);
    const NoiseSpec noise = NoiseSpec::parse(o.noise);
    const auto policies = policies_from(o, d);
    const double reach = std::max(std::abs(d.mu_lo()), std::abs(d.mu_hi())) + noise.half_width;
    const auto f = parse_function(o.fn, reach);
    const SimConfig cfg{o.n_max, o.reps, c.seed};
    cfg.validate();

    const LlnReport report = empirical_lln(d, f, policies, noise, cfg, GridSpec{o.step, o.refine});
    Output out;
    out.doc = {{"estimate_kind", LlnReport::estimate_kind},
               {"generator", kGeneratorName},
               {"target", {{"value", report.target.value},
                           {"argmax", report.target.argmax},
                           {"error_bound", report.target.error_bound}}},
               {"rows", rows_json(report.rows, false)}};
    out.table = rows_table(report.rows);
    out.csv_comments.push_back("estimate_kind=" + std::string(LlnReport::estimate_kind) +
                               " target_error_bound=" + num(report.target.error_bound));
    return out;
}

Output run_rate(const SimOpts& o, const Common& c) {
    const MaximalDist d = interval_of(o.mu_lo, o.mu_hi);
    const NoiseSpec noise = NoiseSpec::parse(o.noise);
    const auto policies = policies_from(o, d);
    const auto schedule = o.schedule.empty() ? log_schedule(o.n_max) : o.schedule;
    const SimConfig cfg{o.n_max, o.reps, c.seed};
    cfg.validate();

    const RateTable table = rate_check(d, policies, noise, cfg, schedule);
    Output out;
    out.doc = {{"estimate_kind", RateTable::estimate_kind},
               {"generator", kGeneratorName},
               {"second_moment_upper", table.second_moment},
               {"any_violation", table.any_violation()},
               {"rows", rows_json(table.rows, true)}};
    out.table = rows_table(table.rows);
    out.csv_comments.push_back("estimate_kind=" + std::string(RateTable::estimate_kind) +
                               " second_moment_upper=" + num(table.second_moment) +
                               " any_violation=" + (table.any_violation() ? "true" : "false"));
    out.exit_code = kSuccess;
    return out;
}

Output run_estimate(const InputOpts& in) {
    const TimeSeries series = ingest_csv(in.input, columns_from(in));
    const SampleSet samples(std::vector<double>(series.values().begin(), series.values().end()));
    const MleResult r = mle_estimate(samples);
    Output out;
    out.doc = to_json(r);
    CsvTable t({"mu_lo_hat", "mu_hi_hat", "delta", "n"});
    t.add_row({num(r.mu_lo_hat), num(r.mu_hi_hat), num(r.delta), std::to_string(r.n)});
    out.table = std::move(t);
    return out;
}

Output run_envelope(const InputOpts& in, const EnvelopeOpts& o) {
    const TimeSeries series = ingest_csv(in.input, columns_from(in));
    const EnvelopeConfig cfg{o.window, o.num_windows, !o.no_demean};
    cfg.validate();
    const std::size_t t = o.t_index.value_or(series.size());
    const auto sigmas = rolling_local_variance(series, cfg, t);
    const VarianceEnvelope env = variance_envelope(sigmas);

    Output out;
    out.doc = to_json(env);
    out.doc["L"] = cfg.window;
    out.doc["K"] = cfg.num_windows;
    out.doc["demean"] = cfg.demean;
    out.doc["t_index"] = t;
    CsvTable table({"j", "sigma_sq"});
    for (const auto& [j, v] : env.per_window) {
        table.add_row({std::to_string(j), num(v)});
    }
    out.table = std::move(table);
    out.csv_comments.push_back("sigma_lo_sq=" + num(env.sigma_lo_sq) +
                               " sigma_hi_sq=" + num(env.sigma_hi_sq) +
                               " L=" + std::to_string(cfg.window) +
                               " K=" + std::to_string(cfg.num_windows) +
                               " demean=" + (cfg.demean ? "true" : "false"));
    return out;
}

// Moves "--config PATH" / "--config=PATH" out of args and splices every
// key=value from the file in as "--key=value", unless the same option
// was given on the command line.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw ArgumentError("--config needs a path");
            }
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (!path || args.empty()) {
        return args;
    }
    std::vector<std::string> injected;
    for (const auto& [key, value] : read_config_file(*path)) {
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given) {
            injected.push_back(flag + "=" + value);
        }
    }
    args.insert(args.begin() + 1, injected.begin(), injected.end());
    return args;
}

std::string render(const Output& out, const std::string& format, const std::string& command,
                   const Common& common, const ConfigMap& config) {
    const std::string digest = config_digest(config);
    if (format == "csv") {
        std::vector<std::string> comments{
            "tool=" + std::string(kToolName) + " version=" + version() + " command=" + command +
            " seed=" + std::to_string(common.seed) + " config_digest=" + digest};
        if (command == "lln" || command == "rate") {
            comments.push_back("generator=" + std::string(kGeneratorName) +
                               " replication_seed=seed+r");
        }
        comments.insert(comments.end(), out.csv_comments.begin(), out.csv_comments.end());
        return out.table->render(comments);
    }
    json doc = out.doc;
    json cfg = json::object();
    for (const auto& [k, v] : config) {
        cfg[k] = v;
    }
    doc["header"] = {{"tool", kToolName},
                     {"version", version()},
                     {"command", command},
                     {"seed", common.seed},
                     {"config_digest", digest},
                     {"config", std::move(cfg)}};
    return doc.dump(2) + "\n";
}

}  // namespace

std::string version() { return SUBLINEAR_VERSION; }

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sublinear expectations, maximal distributions, minimax MLE and variance envelopes",
                 std::string(kToolName)};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    Common common;
    AxiomOpts axiom_opts;
    EvalOpts eval_opts;
    SimOpts sim_opts;
    InputOpts input_opts;
    EnvelopeOpts env_opts;

    auto add_common = [&](CLI::App* sub, const std::string& default_format) {
        common.format = "";
        sub->add_option("--seed", common.seed, "Random seed (echoed in every output)");
        sub->add_option("--output,-o", common.output, "Write the result to this file atomically");
        sub->add_option("--format", common.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->default_str(default_format);
        sub->footer("Options may also come from --config FILE (flat key=value lines, keys are\n"
                    "long option names); command-line flags take precedence.");
    };

    auto* verify = app.add_subcommand("verify-axioms", "Randomized check of the four sublinear-expectation axioms");
    verify->add_option("--cases", axiom_opts.cases, "Number of randomized cases");
    verify->add_option("--family", axiom_opts.family, "JSON family to use for every case");
    add_common(verify, "json");

    auto* eval = app.add_subcommand("eval", "Upper expectation under a maximal distribution or a scenario family");
    eval->add_option("--mu-lo", eval_opts.mu_lo, "Lower mean");
    eval->add_option("--mu-hi", eval_opts.mu_hi, "Upper mean");
    eval->add_option("--family", eval_opts.family, "JSON scenario family (instead of an interval)");
    eval->add_option("--fn", eval_opts.fn, "Test function, e.g. square, sin, affine:2:1, indicator:0:5")
        ->required();
    eval->add_option("--step", eval_opts.step, "Grid step");
    eval->add_flag("--refine", eval_opts.refine, "Golden-section refinement around the grid argmax");
    eval->add_option("--a", eval_opts.a, "Weight of X in E[f(aX + bX')]");
    eval->add_option("--b", eval_opts.b, "Weight of the independent copy X'");
    add_common(eval, "json");

    auto add_sim = [&](CLI::App* sub, bool with_fn) {
        sub->add_option("--mu-lo", sim_opts.mu_lo, "Lower mean")->required();
        sub->add_option("--mu-hi", sim_opts.mu_hi, "Upper mean")->required();
        if (with_fn) {
            sub->add_option("--fn", sim_opts.fn, "Test function")->required();
            sub->add_option("--step", sim_opts.step, "Grid step for the target maximum");
            sub->add_flag("--refine", sim_opts.refine, "Refine the target maximum");
        } else {
            sub->add_option("--schedule", sim_opts.schedule, "Explicit list of n values")
                ->delimiter(',');
        }
        sub->add_option("--policies", sim_opts.policies,
                        "Mean policies: constant:MU, periodic:M1;M2, random:M1;M2 "
                        "(default: both endpoints, midpoint, endpoint alternation)")
            ->delimiter(',');
        sub->add_option("--noise", sim_opts.noise, "none, uniform:A or two_point:A");
        sub->add_option("--n-max", sim_opts.n_max, "Longest path length");
        sub->add_option("--reps", sim_opts.reps, "Monte-Carlo replications");
    };
    auto* lln = app.add_subcommand("lln", "Monte-Carlo law of large numbers against the interval maximum");
    add_sim(lln, true);
    add_common(lln, "csv");
    auto* rate = app.add_subcommand("rate", "Monte-Carlo squared distance to the interval against E[X^2]/n");
    add_sim(rate, false);
    add_common(rate, "csv");

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input,-i", input_opts.input, "CSV file")->required();
        sub->add_option("--column", input_opts.column, "Value column: zero-based index or header name");
        sub->add_option("--timestamp-column", input_opts.timestamp_column,
                        "Optional timestamp column (must be strictly increasing)");
        sub->add_flag("--header", input_opts.header, "First row is a header");
    };
    auto* estimate = app.add_subcommand("estimate", "Minimax MLE (min, max) of the lower and upper mean");
    add_input(estimate);
    add_common(estimate, "json");

    auto* envelope = app.add_subcommand("envelope", "Rolling-window lower/upper variance envelope");
    add_input(envelope);
    envelope->add_option("--window,-L", env_opts.window, "Window length L (>= 2)")->required();
    envelope->add_option("--num-windows,-K", env_opts.num_windows,
                         "Number of shifted windows K (>= 1). K is a modelling choice, not "
                         "estimated: a larger K admits more variance uncertainty.")
        ->required();
    envelope->add_option("--t-index", env_opts.t_index,
                         "Evaluation index t; windows end at t-1..t-K (default: series length)");
    envelope->add_flag("--no-demean", env_opts.no_demean,
                       "Use the raw second moment (assumes zero-mean returns)");
    add_common(envelope, "json");

    std::string command;
    try {
        std::vector<std::string> args = apply_config_file(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.back()->help());
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << version() << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        report_error(err, kValidationError, "validation", e.what());
        return kValidationError;
    } catch (const Error& e) {
        report_error(err, exit_code_for(e.kind()), kind_name(e.kind()), e.what());
        return exit_code_for(e.kind());
    }

    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    const std::string format = common.format.empty() ? sub->get_option("--format")->get_default_str()
                                                     : common.format;
    try {
        Output result;
        if (sub == verify) {
            result = run_verify_axioms(axiom_opts, common);
        } else if (sub == eval) {
            result = run_eval(eval_opts);
        } else if (sub == lln) {
            result = run_lln(sim_opts, common);
        } else if (sub == rate) {
            result = run_rate(sim_opts, common);
        } else if (sub == estimate) {
            result = run_estimate(input_opts);
        } else {
            result = run_envelope(input_opts, env_opts);
        }
        ConfigMap config = effective_config(*sub);
        config["format"] = format;
        const std::string text = render(result, format, command, common, config);
        if (common.output.empty()) {
            out << text;
        } else {
            write_atomically(common.output, text);
        }
        return result.exit_code;
    } catch (const Error& e) {
        report_error(err, exit_code_for(e.kind()), kind_name(e.kind()), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        report_error(err, kInternalError, "internal", e.what());
        return kInternalError;
    }
}

}  // namespace sublinear::cli
