#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sublinear/maximal.hpp"

namespace sublinear {

/// Realized sample x_1, ..., x_n (nonempty, finite).
class SampleSet {
public:
    explicit SampleSet(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
};

struct MleResult {
    double mu_lo_hat = 0.0;
    double mu_hi_hat = 0.0;
    double delta = 0.0;  // degree of uncertainty mu_hi_hat - mu_lo_hat
    std::size_t n = 0;

    friend bool operator==(const MleResult&, const MleResult&) = default;
};

/// Likelihood V(x_1..x_n; mu_lo, mu_hi) of a maximally distributed sample:
/// the product over samples of the point capacities max over mu in
/// [mu_lo, mu_hi] of delta_mu({x_i}). Each factor is 0 or 1, so V is 1
/// exactly when every sample lies in the interval.
/// Throws ArgumentError if mu_lo > mu_hi.
int likelihood(const SampleSet& s, double mu_lo, double mu_hi);

/// Closed-form minimax MLE (min, max). It uses no independence between
/// samples, so it applies unchanged to identically distributed, dependent data.
MleResult mle_estimate(const SampleSet& s);

/// Brute-force minimax solver: enumerates every pair mu_lo <= mu_hi from
/// the candidate grid, keeps the pairs with the largest V, then the smallest
/// delta, then the smallest mu_lo and mu_hi. The grid must contain min(s)
/// and max(s) exactly (ArgumentError otherwise).
MleResult solve_minimax_oracle(const SampleSet& s, std::span<const double> candidate_grid);

struct UnbiasednessResult {
    bool upper_ok = false;
    bool lower_ok = false;
    double upper_of_max = 0.0;   // E[max(X_1..X_n)]
    double lower_of_min = 0.0;   // -E[-min(X_1..X_n)]
};

/// Evaluates E[max] and -E[-min] of n independent copies of M[d] through
/// compose_independent on an atoms_per_axis grid, and compares them with
/// mu_hi and mu_lo for exact equality.
UnbiasednessResult unbiasedness_check(const MaximalDist& d, std::size_t n,
                                      std::size_t atoms_per_axis);

}  // namespace sublinear
