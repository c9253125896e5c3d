#pragma once

// Monte-Carlo experiments for the law of large numbers under mean
// ambiguity. Nature picks each step's mean inside [mu_lo, mu_hi] through a
// MeanPolicy; bounded zero-mean noise is added on top.
//
// Reproducibility: replication r draws from std::mt19937_64 seeded with
// (seed + r). Per step, a random policy consumes one 64-bit draw first
// (index = draw % |set|), then the noise consumes one draw u53 = draw >> 11:
//   uniform(a):   eps = a * (2 * u53 * 2^-53 - 1)
//   two_point(a): eps = (draw >> 63) ? a : -a
// The conversion is spelled out so tables reproduce on any platform.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sublinear/lipschitz.hpp"
#include "sublinear/maximal.hpp"

namespace sublinear {

inline constexpr std::string_view kGeneratorName = "mt19937_64";

class MeanPolicy {
public:
    struct Constant { double mu; };
    struct Periodic { std::vector<double> cycle; };
    struct RandomChoice { std::vector<double> choices; };
    /// Called before each step with (running average of the previous
    /// observations, zero-based step index); returns that step's mean.
    /// The running average is 0 before the first step.
    struct Adversarial {
        std::function<double(double, std::size_t)> choose;
        std::string name = "adversarial";
    };

    static MeanPolicy constant(double mu);
    static MeanPolicy periodic(std::vector<double> cycle);
    static MeanPolicy random(std::vector<double> choices);
    static MeanPolicy adversarial(std::function<double(double, std::size_t)> choose,
                                  std::string name = "adversarial");

    /// Parses "constant:MU", "periodic:M1;M2;...", "random:M1;M2;...".
    static MeanPolicy parse(std::string_view text);

    /// Stable identifier used as policy_id in reports, e.g. "periodic:-1;1".
    [[nodiscard]] std::string label() const;

    /// Throws ArgumentError if a fixed mean lies outside d. Adversarial
    /// policies are checked step by step during simulation instead.
    void validate(const MaximalDist& d) const;

    [[nodiscard]] const auto& kind() const noexcept { return kind_; }

private:
    using Kind = std::variant<Constant, Periodic, RandomChoice, Adversarial>;
    explicit MeanPolicy(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

struct NoiseSpec {
    enum class Kind { none, uniform, two_point };
    Kind kind = Kind::none;
    double half_width = 0.0;

    static NoiseSpec none() { return {}; }
    static NoiseSpec uniform(double a);
    static NoiseSpec two_point(double a);
    /// Parses "none", "uniform:A", "two_point:A".
    static NoiseSpec parse(std::string_view text);

    /// E[eps^2]: a^2/3 for uniform, a^2 for two_point, 0 for none.
    [[nodiscard]] double second_moment() const noexcept;
    [[nodiscard]] std::string label() const;
};

struct SimConfig {
    std::size_t n = 1;
    std::size_t reps = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Row-major reps x n matrix of simulated observations.
struct PathMatrix {
    std::size_t reps = 0;
    std::size_t n = 0;
    std::vector<double> values;

    [[nodiscard]] double at(std::size_t r, std::size_t i) const { return values[r * n + i]; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return std::span<const double>(values).subspan(r * n, n);
    }
};

/// X_i = mu_i + eps_i for every replication. Throws SimulationError naming
/// the step when the policy leaves [mu_lo, mu_hi].
PathMatrix simulate_path(const MaximalDist& d, const MeanPolicy& policy, const NoiseSpec& noise,
                         const SimConfig& cfg);

/// 1, 10, 100, ... up to n_max, with n_max appended if it is not a power of ten.
std::vector<std::size_t> log_schedule(std::size_t n_max);

/// Upper second moment E[X_1^2] = max(mu_lo^2, mu_hi^2) + E[eps^2].
double second_moment_upper(const MaximalDist& d, const NoiseSpec& noise);

/// policy_id used for the max-over-policies rows of a report.
inline constexpr std::string_view kSupPolicyId = "sup";

/// One line of an LLN or rate table. For the LLN report target_or_bound
/// is the interval maximum and gap = |estimate - target|; for the rate
/// table it is E[X_1^2]/n and gap = estimate - bound.
struct ReportRow {
    std::size_t n = 0;
    std::string policy_id;
    double estimate = 0.0;
    double target_or_bound = 0.0;
    double gap = 0.0;
    double std_error = 0.0;
    bool violation = false;  // rate tables only
};

struct LlnReport {
    /// The estimate is a max over a finite policy set, i.e. an inner
    /// approximation and therefore a lower bound of the upper expectation.
    static constexpr std::string_view estimate_kind = "lower_bound";
    IntervalMax target;
    std::vector<ReportRow> rows;
};

/// For every n of log_schedule(cfg.n) and every policy: Monte-Carlo mean of
/// f(S_n / n) with its standard error, plus a "sup" row holding the max over
/// policies. The target is eval_maximal(d, f, g).
LlnReport empirical_lln(const MaximalDist& d, const BoundedLipschitzFn& f,
                        std::span<const MeanPolicy> policies, const NoiseSpec& noise,
                        const SimConfig& cfg, const GridSpec& g);

struct RateTable {
    static constexpr std::string_view estimate_kind = "lower_bound";
    double second_moment = 0.0;
    std::vector<ReportRow> rows;

    /// True if any "sup" row exceeds its bound by more than 3 standard errors.
    [[nodiscard]] bool any_violation() const noexcept;
};

/// For every n in the schedule: Monte-Carlo mean of d^2(S_n / n) per policy
/// and the "sup" row, against the bound second_moment_upper / n.
/// A row is flagged when estimate > bound + 3 * stderr. Paths are simulated
/// once up to max(n_schedule) and read at each checkpoint.
RateTable rate_check(const MaximalDist& d, std::span<const MeanPolicy> policies,
                     const NoiseSpec& noise, const SimConfig& cfg,
                     std::span<const std::size_t> n_schedule);

}  // namespace sublinear
