#pragma once

// Rolling-window upper/lower variance envelope.
//
// For an evaluation index t and window length L, window j (1-based,
// j = 1..K) covers the L observations ending at index t - j:
//
//   index:   t-L-K+1 ........ t-L-1  t-L  ........  t-2   t-1 | t
//   j = 1:                           [ L values ending at t-1 ]|
//   j = 2:                      [ L values ending at t-2 ]     |
//   j = K:   [ L values ending at t-K ]                        |
//
// so the series needs at least L + K - 1 observations before t. Windows
// overlap maximally and shift by one observation per j.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sublinear {

class TimeSeries {
public:
    /// Values must be finite. Timestamps, when given, must match the value
    /// count and be strictly increasing (numerically if every timestamp
    /// parses as a number, lexicographically otherwise).
    explicit TimeSeries(std::vector<double> values,
                        std::optional<std::vector<std::string>> timestamps = std::nullopt);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::optional<std::vector<std::string>>& timestamps() const noexcept {
        return timestamps_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
    std::optional<std::vector<std::string>> timestamps_;
};

struct EnvelopeConfig {
    std::size_t window = 2;        // L >= 2
    std::size_t num_windows = 1;   // K >= 1
    bool demean = true;            // subtract the window mean; else raw second moment

    void validate() const;
};

/// sigma^2_j for j = 1..K (element j-1). With demean the estimator is
/// sum (Z - mean_j)^2 / (L - 1); without it, sum Z^2 / (L - 1), which
/// presumes zero-mean returns. Throws LengthError when fewer than L + K - 1
/// observations precede t_index, ArgumentError if t_index > z.size().
std::vector<double> rolling_local_variance(const TimeSeries& z, const EnvelopeConfig& cfg,
                                           std::size_t t_index);

/// Same with t_index = z.size(), i.e. the estimate for the next period.
std::vector<double> rolling_local_variance(const TimeSeries& z, const EnvelopeConfig& cfg);

struct VarianceEnvelope {
    double sigma_lo_sq = 0.0;
    double sigma_hi_sq = 0.0;
    std::vector<std::pair<std::size_t, double>> per_window;  // (j, sigma^2_j), j 1-based
};

/// (min, max) of the local variances: the estimate of the lower and upper
/// variance. Throws ArgumentError on an empty list or a negative/non-finite entry.
VarianceEnvelope variance_envelope(std::span<const double> sigmas);

}  // namespace sublinear
