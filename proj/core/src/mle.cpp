#include "sublinear/mle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sublinear/error.hpp"
#include "sublinear/joint.hpp"

namespace sublinear {

SampleSet::SampleSet(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ArgumentError("sample set must not be empty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ArgumentError("sample " + std::to_string(i) + " is not finite");
        }
    }
}

int likelihood(const SampleSet& s, double mu_lo, double mu_hi) {
    if (mu_lo > mu_hi) {
        throw ArgumentError("likelihood needs mu_lo <= mu_hi");
    }
    int v = 1;
    for (double x : s.values()) {
        // point capacity of {x} under the Dirac family on [mu_lo, mu_hi]
        const int point_capacity = (mu_lo <= x && x <= mu_hi) ? 1 : 0;
        v *= point_capacity;
    }
    return v;
}

MleResult mle_estimate(const SampleSet& s) {
    const auto [lo, hi] = std::minmax_element(s.values().begin(), s.values().end());
    return {*lo, *hi, *hi - *lo, s.size()};
}

MleResult solve_minimax_oracle(const SampleSet& s, std::span<const double> candidate_grid) {
    const auto [lo, hi] = std::minmax_element(s.values().begin(), s.values().end());
    const bool has_lo = std::find(candidate_grid.begin(), candidate_grid.end(), *lo) != candidate_grid.end();
    const bool has_hi = std::find(candidate_grid.begin(), candidate_grid.end(), *hi) != candidate_grid.end();
    if (!has_lo || !has_hi) {
        throw ArgumentError("candidate grid must contain the sample minimum and maximum");
    }

    std::vector<double> grid(candidate_grid.begin(), candidate_grid.end());
    for (double g : grid) {
        if (!std::isfinite(g)) {
            throw ArgumentError("candidate grid values must be finite");
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // Pairs are visited with mu_lo and then mu_hi increasing, so a strict
    // improvement test keeps the smallest (mu_lo, mu_hi) among ties.
    int best_v = -1;
    double best_lo = 0.0;
    double best_hi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            const int v = likelihood(s, grid[i], grid[j]);
            const double delta = grid[j] - grid[i];
            if (v > best_v || (v == best_v && delta < best_hi - best_lo)) {
                best_v = v;
                best_lo = grid[i];
                best_hi = grid[j];
            }
        }
    }
    return {best_lo, best_hi, best_hi - best_lo, s.size()};
}

UnbiasednessResult unbiasedness_check(const MaximalDist& d, std::size_t n,
                                      std::size_t atoms_per_axis) {
    if (n < 1) {
        throw ArgumentError("unbiasedness check needs n >= 1");
    }
    if (atoms_per_axis < 2) {
        throw ArgumentError("unbiasedness check needs at least 2 atoms per axis");
    }
    const JointSpec joint(std::vector<Marginal>(n, d));
    const GridSpec grid = GridSpec::with_points(d, atoms_per_axis);
    const std::vector<double> unit(n, 1.0);

    const NaryLipschitzFn max_fn{
        [](std::span<const double> x) { return *std::max_element(x.begin(), x.end()); }, unit};
    const NaryLipschitzFn neg_min_fn{
        [](std::span<const double> x) { return -*std::min_element(x.begin(), x.end()); }, unit};

    UnbiasednessResult out;
    out.upper_of_max = compose_independent(joint, max_fn, grid).value;
    out.lower_of_min = -compose_independent(joint, neg_min_fn, grid).value;
    out.upper_ok = out.upper_of_max == d.mu_hi();
    out.lower_ok = out.lower_of_min == d.mu_lo();
    return out;
}

}  // namespace sublinear
