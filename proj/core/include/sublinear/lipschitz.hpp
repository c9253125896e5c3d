#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace sublinear {

/// Scalar test function together with the constants that certify it:
/// a Lipschitz constant and a sup-norm bound (infinite when unbounded).
struct BoundedLipschitzFn {
    std::function<double(double)> eval;
    double lipschitz_const = 0.0;
    double bound = std::numeric_limits<double>::infinity();

    double operator()(double x) const { return eval(x); }
};

/// Function of several real arguments with one Lipschitz constant per
/// coordinate. Grid error certificates in `joint` are built from these.
struct NaryLipschitzFn {
    std::function<double(std::span<const double>)> eval;
    std::vector<double> lipschitz;

    [[nodiscard]] std::size_t arity() const noexcept { return lipschitz.size(); }
    double operator()(std::span<const double> x) const { return eval(x); }
};

/// Outcome of a randomized spot check of the declared constants.
struct LipschitzCheck {
    bool lipschitz_ok = true;
    bool bound_ok = true;
    double worst_slope = 0.0;   // largest observed |f(x)-f(y)| / |x-y|
    double worst_abs = 0.0;     // largest observed |f(x)|
};

/// Samples `pairs` random point pairs in [lo, hi] and compares finite
/// differences against the declared Lipschitz constant (with a relative
/// slack of 1e-9 for rounding) and |f| against the declared bound.
LipschitzCheck spot_check(const BoundedLipschitzFn& f, double lo, double hi, std::size_t pairs,
                          std::uint64_t seed);

}  // namespace sublinear
