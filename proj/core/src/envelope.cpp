#include "sublinear/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sublinear/csv.hpp"
#include "sublinear/error.hpp"

namespace sublinear {

TimeSeries::TimeSeries(std::vector<double> values,
                       std::optional<std::vector<std::string>> timestamps)
    : values_(std::move(values)), timestamps_(std::move(timestamps)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("observation " + std::to_string(i) + " is not finite");
        }
    }
    if (!timestamps_) {
        return;
    }
    const auto& ts = *timestamps_;
    if (ts.size() != values_.size()) {
        throw DataError("timestamp count does not match value count");
    }
    std::vector<double> numeric;
    for (const auto& t : ts) {
        const auto v = parse_finite(t);
        if (!v) {
            numeric.clear();
            break;
        }
        numeric.push_back(*v);
    }
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const bool increasing =
            numeric.size() == ts.size() ? numeric[i - 1] < numeric[i] : ts[i - 1] < ts[i];
        if (!increasing) {
            throw DataError("timestamps are not strictly increasing at observation " +
                            std::to_string(i) + " ('" + ts[i - 1] + "' then '" + ts[i] + "')");
        }
    }
}

void EnvelopeConfig::validate() const {
    if (window < 2) {
        throw ArgumentError("window length L must be at least 2");
    }
    if (num_windows < 1) {
        throw ArgumentError("number of windows K must be at least 1");
    }
}

std::vector<double> rolling_local_variance(const TimeSeries& z, const EnvelopeConfig& cfg,
                                           std::size_t t_index) {
    cfg.validate();
    if (t_index > z.size()) {
        throw ArgumentError("evaluation index " + std::to_string(t_index) +
                            " is past the end of the series (" + std::to_string(z.size()) + ")");
    }
    const std::size_t required = cfg.window + cfg.num_windows - 1;
    if (t_index < required) {
        throw LengthError("rolling variance needs " + std::to_string(required) +
                              " observations before the evaluation index, " +
                              std::to_string(t_index) + " available",
                          required, t_index);
    }

    const auto values = z.values();
    const double divisor = static_cast<double>(cfg.window - 1);
    std::vector<double> out;
    out.reserve(cfg.num_windows);
    for (std::size_t j = 1; j <= cfg.num_windows; ++j) {
        const auto window = values.subspan(t_index - j - cfg.window + 1, cfg.window);
        double ss = 0.0;
        if (cfg.demean) {
            double sum = 0.0;
            for (double v : window) {
                sum += v;
            }
            const double mean = sum / static_cast<double>(cfg.window);
            for (double v : window) {
                ss += (v - mean) * (v - mean);
            }
        } else {
            for (double v : window) {
                ss += v * v;
            }
        }
        out.push_back(ss / divisor);
    }
    return out;
}

std::vector<double> rolling_local_variance(const TimeSeries& z, const EnvelopeConfig& cfg) {
    return rolling_local_variance(z, cfg, z.size());
}

VarianceEnvelope variance_envelope(std::span<const double> sigmas) {
    if (sigmas.empty()) {
        throw ArgumentError("variance envelope needs at least one local variance");
    }
    VarianceEnvelope env;
    env.sigma_lo_sq = sigmas[0];
    env.sigma_hi_sq = sigmas[0];
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        const double v = sigmas[i];
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ArgumentError("local variance " + std::to_string(i + 1) +
                                " is negative or not finite");
        }
        env.sigma_lo_sq = std::min(env.sigma_lo_sq, v);
        env.sigma_hi_sq = std::max(env.sigma_hi_sq, v);
        env.per_window.emplace_back(i + 1, v);
    }
    return env;
}

}  // namespace sublinear
