#pragma once

// One-dimensional maximal distribution M[mu_lo, mu_hi]: the upper
// expectation of f(X) is the maximum of f over the interval.

#include <cstddef>
#include <functional>
#include <vector>

#include "sublinear/lipschitz.hpp"
#include "sublinear/scenario.hpp"

namespace sublinear {

class MaximalDist {
public:
    /// Throws ArgumentError unless both bounds are finite and mu_lo <= mu_hi.
    MaximalDist(double mu_lo, double mu_hi);

    [[nodiscard]] double mu_lo() const noexcept { return lo_; }
    [[nodiscard]] double mu_hi() const noexcept { return hi_; }
    [[nodiscard]] double width() const noexcept { return hi_ - lo_; }
    [[nodiscard]] bool degenerate() const noexcept { return lo_ == hi_; }
    [[nodiscard]] bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

    friend bool operator==(const MaximalDist&, const MaximalDist&) = default;

private:
    double lo_;
    double hi_;
};

/// Discretization of an interval maximum.
struct GridSpec {
    double step = 1e-3;
    bool refine = false;  // golden-section polish around the grid argmax

    /// Step that places exactly `n_points` (>= 2) uniformly spaced points on
    /// d, endpoints included. For a degenerate d the step is irrelevant and 1 is returned.
    static GridSpec with_points(const MaximalDist& d, std::size_t n_points, bool refine = false);
};

/// Upper bound on the number of points a single grid may hold.
inline constexpr std::size_t kMaxGridPoints = 50'000'000;

/// Points lo, lo + step, lo + 2 step, ... strictly below hi, then hi.
/// Halving the step yields a superset of the points. A degenerate
/// interval gives the single point {lo}.
std::vector<double> grid_points(const MaximalDist& d, const GridSpec& g);

/// Largest gap between consecutive grid points (0 for a degenerate interval).
double grid_spacing(const MaximalDist& d, const GridSpec& g);

struct IntervalMax {
    double value = 0.0;
    double argmax = 0.0;
    double error_bound = 0.0;  // true max lies in [value, value + error_bound]
};

/// Grid maximum of f over [mu_lo, mu_hi]; ties resolve to the smallest x.
/// error_bound = lipschitz * spacing / 2. With g.refine a golden-section
/// search runs on the two grid cells adjacent to the argmax and the bound
/// shrinks to lipschitz * (final bracket) / 2; that bound is only valid
/// when f is unimodal on that neighbourhood.
IntervalMax eval_maximal(const MaximalDist& d, const BoundedLipschitzFn& f, const GridSpec& g);

/// Dirac family {delta_mu} on the uniform n_atoms-point grid of d.
/// n_atoms < 2 is an ArgumentError unless d is degenerate, in which case
/// the family is the single Dirac at mu_lo.
ScenarioFamily dirac_family(const MaximalDist& d, std::size_t n_atoms);

/// Dirac family on exactly the points of grid_points(d, g).
ScenarioFamily dirac_family(const MaximalDist& d, const GridSpec& g);

struct BoundedValue {
    double value = 0.0;
    double error_bound = 0.0;
};

/// Sequential-independence evaluation of E[f(aX + bX')] for X' an
/// independent copy of X: max over the grid square of f(a x + b x').
/// Throws ArgumentError for negative or non-finite a, b.
BoundedValue convolve_scaled(const MaximalDist& d, double a, double b, const BoundedLipschitzFn& f,
                             const GridSpec& g);

/// Distance from x to the interval; zero exactly on [mu_lo, mu_hi].
double interval_distance(const MaximalDist& d, double x) noexcept;

}  // namespace sublinear
