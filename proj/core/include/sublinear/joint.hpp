#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "sublinear/lipschitz.hpp"
#include "sublinear/maximal.hpp"
#include "sublinear/scenario.hpp"

namespace sublinear {

using Marginal = std::variant<MaximalDist, ScenarioFamily>;

/// Ordered marginals X_1, ..., X_n where X_{i+1} is independent of
/// (X_1, ..., X_i) in the sequential sense
///     E[phi(X, Y)] = E[ E[phi(x, Y)] at x = X ].
class JointSpec {
public:
    explicit JointSpec(std::vector<Marginal> marginals);

    [[nodiscard]] std::span<const Marginal> marginals() const noexcept { return marginals_; }
    [[nodiscard]] std::size_t size() const noexcept { return marginals_.size(); }

private:
    std::vector<Marginal> marginals_;
};

/// Evaluates E[f(X_1, ..., X_n)] by backward recursion: the last marginal
/// is integrated first (innermost), X_1 last. Maximal marginals are
/// scanned on g; family marginals are exact. The error bound adds
/// lipschitz_i * spacing_i / 2 over the maximal marginals.
///
/// Throws ArgumentError on arity mismatch or when the full product grid
/// would exceed kMaxCompositionEvaluations evaluations.
BoundedValue compose_independent(const JointSpec& j, const NaryLipschitzFn& f, const GridSpec& g);

inline constexpr std::size_t kMaxCompositionEvaluations = 200'000'000;

struct AsymmetryProbe {
    double ab = 0.0;  // E[ E[f(x, Y)] at x = X ]
    double ba = 0.0;  // E[ E[f(X, y)] at y = Y ]
};

/// Both nesting orders of a two-variable composition. They agree in the
/// classical (single-measure) case and for maximal marginals, but not in general.
AsymmetryProbe asymmetry_probe(const Marginal& x, const Marginal& y, const NaryLipschitzFn& f,
                               const GridSpec& g);

/// Lipschitz approximation 1 / (1 + k |x - x_star|) of the point indicator
/// at x_star; decreases to the indicator as k grows. k must be >= 1.
BoundedLipschitzFn indicator_approx(double x_star, int k);

struct PointCapacity {
    double value = 0.0;          // exact limit, 0 or 1
    std::vector<double> trace;   // E[prod_i phi_k(X_i)] for k = 1..k_max
};

/// Capacity of the point event {X_1 = x_1, ..., X_n = x_n} for maximal
/// marginals: the product of the indicators x_i in [mu_lo_i, mu_hi_i].
/// The trace holds the approximating values for k = 1..k_max; each factor
/// is evaluated at its exact maximizer (the projection of x_i onto the
/// interval) and the factors multiply by the product rule.
PointCapacity point_capacity(const JointSpec& j, std::span<const double> points, int k_max);

}  // namespace sublinear
