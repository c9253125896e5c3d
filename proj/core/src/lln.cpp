#include "sublinear/lln.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "sublinear/csv.hpp"
#include "sublinear/error.hpp"
#include "sublinear/format.hpp"

namespace sublinear {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> parse_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(';', start), text.size());
        const auto v = parse_finite(text.substr(start, end - start));
        if (!v) {
            throw ArgumentError("cannot parse " + std::string(what) + " value '" +
                                std::string(text.substr(start, end - start)) + "'");
        }
        out.push_back(*v);
        start = end + 1;
    }
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += format_number(xs[i]);
    }
    return out;
}

// Generates one replication's observations X_0, X_1, ... on demand.
class PathStream {
public:
    PathStream(const MaximalDist& d, const MeanPolicy& policy, const NoiseSpec& noise,
               std::uint64_t seed)
        : d_(d), policy_(policy), noise_(noise), rng_(seed) {}

    double next() {
        const double mu = choose_mean();
        if (!d_.contains(mu)) {
            throw SimulationError("policy " + policy_.label() + " chose mean " +
                                      format_number(mu) + " outside [" + format_number(d_.mu_lo()) +
                                      ", " + format_number(d_.mu_hi()) + "] at step " +
                                      std::to_string(step_),
                                  step_);
        }
        const double x = mu + draw_noise();
        sum_ += x;
        ++step_;
        return x;
    }

    [[nodiscard]] double sum() const noexcept { return sum_; }

private:
    double choose_mean() {
        return std::visit(
            overloaded{
                [](const MeanPolicy::Constant& c) { return c.mu; },
                [this](const MeanPolicy::Periodic& p) { return p.cycle[step_ % p.cycle.size()]; },
                [this](const MeanPolicy::RandomChoice& r) {
                    return r.choices[rng_() % r.choices.size()];
                },
                [this](const MeanPolicy::Adversarial& a) {
                    const double avg = step_ == 0 ? 0.0 : sum_ / static_cast<double>(step_);
                    return a.choose(avg, step_);
                },
            },
            policy_.kind());
    }

    double draw_noise() {
        switch (noise_.kind) {
            case NoiseSpec::Kind::none:
                return 0.0;
            case NoiseSpec::Kind::uniform: {
                const double u = static_cast<double>(rng_() >> 11) * 0x1p-53;
                return noise_.half_width * (2.0 * u - 1.0);
            }
            case NoiseSpec::Kind::two_point:
                return (rng_() >> 63) != 0 ? noise_.half_width : -noise_.half_width;
        }
        return 0.0;
    }

    const MaximalDist& d_;
    const MeanPolicy& policy_;
    const NoiseSpec& noise_;
    std::mt19937_64 rng_;
    double sum_ = 0.0;
    std::size_t step_ = 0;
};

struct MeanStat {
    double mean = 0.0;
    double std_error = 0.0;
};

MeanStat summarize(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    const double n = static_cast<double>(xs.size());
    const double mean = sum / n;
    if (xs.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

// stats[c] = Monte-Carlo mean and standard error of stat(S_n / n) at
// checkpoint c, over all replications.
template <typename Stat>
std::vector<MeanStat> checkpoint_stats(const MaximalDist& d, const MeanPolicy& policy,
                                       const NoiseSpec& noise, const SimConfig& cfg,
                                       const std::vector<std::size_t>& checkpoints, Stat&& stat) {
    std::vector<std::vector<double>> samples(checkpoints.size(), std::vector<double>(cfg.reps));
    const std::size_t n_max = checkpoints.back();
    for (std::size_t r = 0; r < cfg.reps; ++r) {
        PathStream stream(d, policy, noise, cfg.seed + r);
        std::size_t c = 0;
        for (std::size_t i = 1; i <= n_max; ++i) {
            stream.next();
            if (i == checkpoints[c]) {
                samples[c][r] = stat(stream.sum() / static_cast<double>(i));
                ++c;
            }
        }
    }
    std::vector<MeanStat> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        out.push_back(summarize(s));
    }
    return out;
}

void require_policies(std::span<const MeanPolicy> policies) {
    if (policies.empty()) {
        throw ArgumentError("at least one mean policy is required");
    }
}

}  // namespace

MeanPolicy MeanPolicy::constant(double mu) { return MeanPolicy(Constant{mu}); }

MeanPolicy MeanPolicy::periodic(std::vector<double> cycle) {
    if (cycle.empty()) {
        throw ArgumentError("periodic policy needs at least one mean");
    }
    return MeanPolicy(Periodic{std::move(cycle)});
}

MeanPolicy MeanPolicy::random(std::vector<double> choices) {
    if (choices.empty()) {
        throw ArgumentError("random policy needs at least one mean");
    }
    return MeanPolicy(RandomChoice{std::move(choices)});
}

MeanPolicy MeanPolicy::adversarial(std::function<double(double, std::size_t)> choose,
                                   std::string name) {
    if (!choose) {
        throw ArgumentError("adversarial policy needs a callback");
    }
    return MeanPolicy(Adversarial{std::move(choose), std::move(name)});
}

MeanPolicy MeanPolicy::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ArgumentError("mean policy '" + std::string(text) + "' must look like kind:values");
    }
    const auto kind = text.substr(0, colon);
    const auto args = text.substr(colon + 1);
    if (kind == "constant") {
        const auto v = parse_list(args, "constant policy");
        if (v.size() != 1) {
            throw ArgumentError("constant policy takes exactly one mean");
        }
        return constant(v[0]);
    }
    if (kind == "periodic") {
        return periodic(parse_list(args, "periodic policy"));
    }
    if (kind == "random") {
        return random(parse_list(args, "random policy"));
    }
    throw ArgumentError("unknown mean policy kind '" + std::string(kind) + "'");
}

std::string MeanPolicy::label() const {
    return std::visit(overloaded{
                          [](const Constant& c) { return "constant:" + format_number(c.mu); },
                          [](const Periodic& p) { return "periodic:" + join(p.cycle); },
                          [](const RandomChoice& r) { return "random:" + join(r.choices); },
                          [](const Adversarial& a) { return a.name; },
                      },
                      kind_);
}

void MeanPolicy::validate(const MaximalDist& d) const {
    auto check = [&](double mu) {
        if (!d.contains(mu)) {
            throw ArgumentError("policy " + label() + " uses mean " + format_number(mu) +
                                " outside [" + format_number(d.mu_lo()) + ", " +
                                format_number(d.mu_hi()) + "]");
        }
    };
    std::visit(overloaded{
                   [&](const Constant& c) { check(c.mu); },
                   [&](const Periodic& p) { std::for_each(p.cycle.begin(), p.cycle.end(), check); },
                   [&](const RandomChoice& r) {
                       std::for_each(r.choices.begin(), r.choices.end(), check);
                   },
                   [](const Adversarial&) {},
               },
               kind_);
}

NoiseSpec NoiseSpec::uniform(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw ArgumentError("uniform noise needs a positive finite half width");
    }
    return {Kind::uniform, a};
}

NoiseSpec NoiseSpec::two_point(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw ArgumentError("two-point noise needs a positive finite half width");
    }
    return {Kind::two_point, a};
}

NoiseSpec NoiseSpec::parse(std::string_view text) {
    if (text == "none") {
        return none();
    }
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const auto kind = text.substr(0, colon);
        const auto a = parse_finite(text.substr(colon + 1));
        if (a && kind == "uniform") {
            return uniform(*a);
        }
        if (a && kind == "two_point") {
            return two_point(*a);
        }
    }
    throw ArgumentError("noise '" + std::string(text) +
                        "' must be none, uniform:A or two_point:A");
}

double NoiseSpec::second_moment() const noexcept {
    switch (kind) {
        case Kind::none: return 0.0;
        case Kind::uniform: return half_width * half_width / 3.0;
        case Kind::two_point: return half_width * half_width;
    }
    return 0.0;
}

std::string NoiseSpec::label() const {
    switch (kind) {
        case Kind::none: return "none";
        case Kind::uniform: return "uniform:" + format_number(half_width);
        case Kind::two_point: return "two_point:" + format_number(half_width);
    }
    return "none";
}

void SimConfig::validate() const {
    if (n < 1) {
        throw ArgumentError("path length n must be at least 1");
    }
    if (reps < 1) {
        throw ArgumentError("replication count must be at least 1");
    }
}

PathMatrix simulate_path(const MaximalDist& d, const MeanPolicy& policy, const NoiseSpec& noise,
                         const SimConfig& cfg) {
    cfg.validate();
    PathMatrix out{cfg.reps, cfg.n, {}};
    out.values.reserve(cfg.reps * cfg.n);
    for (std::size_t r = 0; r < cfg.reps; ++r) {
        PathStream stream(d, policy, noise, cfg.seed + r);
        for (std::size_t i = 0; i < cfg.n; ++i) {
            out.values.push_back(stream.next());
        }
    }
    return out;
}

std::vector<std::size_t> log_schedule(std::size_t n_max) {
    if (n_max < 1) {
        throw ArgumentError("schedule needs n_max >= 1");
    }
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n <= n_max; n *= 10) {
        out.push_back(n);
        if (n > n_max / 10) {
            break;
        }
    }
    if (out.back() != n_max) {
        out.push_back(n_max);
    }
    return out;
}

double second_moment_upper(const MaximalDist& d, const NoiseSpec& noise) {
    return std::max(d.mu_lo() * d.mu_lo(), d.mu_hi() * d.mu_hi()) + noise.second_moment();
}

LlnReport empirical_lln(const MaximalDist& d, const BoundedLipschitzFn& f,
                        std::span<const MeanPolicy> policies, const NoiseSpec& noise,
                        const SimConfig& cfg, const GridSpec& g) {
    require_policies(policies);
    cfg.validate();
    LlnReport report;
    report.target = eval_maximal(d, f, g);
    const double target = report.target.value;
    const auto schedule = log_schedule(cfg.n);

    std::vector<std::vector<MeanStat>> per_policy;
    for (const auto& p : policies) {
        per_policy.push_back(checkpoint_stats(d, p, noise, cfg, schedule, [&f](double mean) {
            const double v = f(mean);
            if (!std::isfinite(v)) {
                throw EvaluationError("function is not finite at sample mean " + format_number(mean));
            }
            return v;
        }));
    }

    for (std::size_t c = 0; c < schedule.size(); ++c) {
        std::size_t best = 0;
        for (std::size_t p = 0; p < policies.size(); ++p) {
            const auto& s = per_policy[p][c];
            report.rows.push_back({schedule[c], policies[p].label(), s.mean, target,
                                   std::abs(s.mean - target), s.std_error, false});
            if (s.mean > per_policy[best][c].mean) {
                best = p;
            }
        }
        const auto& s = per_policy[best][c];
        report.rows.push_back({schedule[c], std::string(kSupPolicyId), s.mean, target,
                               std::abs(s.mean - target), s.std_error, false});
    }
    return report;
}

bool RateTable::any_violation() const noexcept {
    return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.violation; });
}

RateTable rate_check(const MaximalDist& d, std::span<const MeanPolicy> policies,
                     const NoiseSpec& noise, const SimConfig& cfg,
                     std::span<const std::size_t> n_schedule) {
    require_policies(policies);
    if (n_schedule.empty()) {
        throw ArgumentError("rate check needs a nonempty n schedule");
    }
    if (std::find(n_schedule.begin(), n_schedule.end(), std::size_t{0}) != n_schedule.end()) {
        throw ArgumentError("schedule entries must be at least 1");
    }
    const std::set<std::size_t> unique(n_schedule.begin(), n_schedule.end());
    const std::vector<std::size_t> checkpoints(unique.begin(), unique.end());
    SimConfig run = cfg;
    run.n = checkpoints.back();
    run.validate();

    RateTable table;
    table.second_moment = second_moment_upper(d, noise);

    std::vector<std::vector<MeanStat>> per_policy;
    for (const auto& p : policies) {
        per_policy.push_back(checkpoint_stats(d, p, noise, run, checkpoints, [&d](double mean) {
            const double dist = interval_distance(d, mean);
            return dist * dist;
        }));
    }

    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        const double bound = table.second_moment / static_cast<double>(checkpoints[c]);
        auto row = [&](std::string id, const MeanStat& s) {
            return ReportRow{checkpoints[c], std::move(id), s.mean, bound, s.mean - bound,
                             s.std_error, s.mean > bound + 3.0 * s.std_error};
        };
        std::size_t best = 0;
        for (std::size_t p = 0; p < policies.size(); ++p) {
            table.rows.push_back(row(policies[p].label(), per_policy[p][c]));
            if (per_policy[p][c].mean > per_policy[best][c].mean) {
                best = p;
            }
        }
        table.rows.push_back(row(std::string(kSupPolicyId), per_policy[best][c]));
    }
    return table;
}

}  // namespace sublinear
