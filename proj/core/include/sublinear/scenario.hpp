#pragma once

// Finite families of discrete probability measures and the upper
// expectation / capacity they induce. Every supremum here is a finite max,
// so all results are exact up to floating-point summation.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sublinear/lipschitz.hpp"

namespace sublinear {

/// Absolute tolerance on |sum(weights) - 1| accepted by DiscreteMeasure.
inline constexpr double kWeightSumTolerance = 1e-12;

struct Atom {
    double point = 0.0;
    double weight = 0.0;
};

/// Finitely supported probability measure. Duplicate points are allowed
/// and their weights add when the measure is queried.
class DiscreteMeasure {
public:
    /// Throws ArgumentError on empty input, non-finite points, weights
    /// outside [0, 1], or a weight sum farther than kWeightSumTolerance
    /// from one. Weights are never renormalized.
    explicit DiscreteMeasure(std::vector<Atom> atoms);

    static DiscreteMeasure dirac(double point);
    static DiscreteMeasure uniform(std::span<const double> points);

    [[nodiscard]] std::span<const Atom> atoms() const noexcept { return atoms_; }
    [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
};

/// Nonempty set of measures, the ambiguity set of the model.
class ScenarioFamily {
public:
    explicit ScenarioFamily(std::vector<DiscreteMeasure> measures);

    [[nodiscard]] std::span<const DiscreteMeasure> measures() const noexcept { return measures_; }
    [[nodiscard]] std::size_t size() const noexcept { return measures_.size(); }

private:
    std::vector<DiscreteMeasure> measures_;
};

/// Linear expectation sum(weight * f(point)).
///
/// The accumulated sum is clamped to [min f(point), max f(point)]: a
/// probability average cannot leave the hull of the atom values, and the
/// clamp removes the residual of weights that sum to 1 only within
/// tolerance. As a consequence constants are reproduced bit-exactly and
/// f <= g on the atoms still implies expect_linear(f) <= expect_linear(g).
///
/// Throws EvaluationError naming the atom index if f returns a non-finite value.
double expect_linear(const DiscreteMeasure& m, const std::function<double(double)>& f);
double expect_linear(const DiscreteMeasure& m, const BoundedLipschitzFn& f);

struct SublinearValue {
    double value = 0.0;
    std::size_t attaining_index = 0;  // lowest index attaining the max
};

/// Upper expectation max over measures of expect_linear.
SublinearValue sublinear_expect(const ScenarioFamily& fam, const std::function<double(double)>& f);
SublinearValue sublinear_expect(const ScenarioFamily& fam, const BoundedLipschitzFn& f);

/// Upper probability max over measures of the total weight on `event`.
double capacity(const ScenarioFamily& fam, const std::function<bool(double)>& event);

}  // namespace sublinear
