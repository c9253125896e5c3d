#include "sublinear/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sublinear {

LipschitzCheck spot_check(const BoundedLipschitzFn& f, double lo, double hi, std::size_t pairs,
                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(lo, hi);
    LipschitzCheck out;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double x = unif(rng);
        const double y = unif(rng);
        const double fx = f(x);
        const double fy = f(y);
        out.worst_abs = std::max({out.worst_abs, std::abs(fx), std::abs(fy)});
        if (x != y) {
            out.worst_slope = std::max(out.worst_slope, std::abs(fx - fy) / std::abs(x - y));
        }
    }
    out.lipschitz_ok = out.worst_slope <= f.lipschitz_const * (1.0 + 1e-9) + 1e-12;
    out.bound_ok = out.worst_abs <= f.bound;
    return out;
}

}  // namespace sublinear
