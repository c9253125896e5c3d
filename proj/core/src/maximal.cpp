#include "sublinear/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sublinear/error.hpp"

namespace sublinear {

namespace {

void validate(const GridSpec& g) {
    if (!(g.step > 0.0) || !std::isfinite(g.step)) {
        throw ArgumentError("grid step must be a positive finite number");
    }
}

// Number of points strictly below hi that lie on lo + i * step.
std::size_t interior_count(const MaximalDist& d, const GridSpec& g) {
    const double ratio = d.width() / g.step;
    // The slack keeps a step of width/(n-1) from producing an extra point
    // when the division rounds up.
    const double m = std::ceil(ratio * (1.0 - 1e-12));
    if (!(m + 1.0 <= static_cast<double>(kMaxGridPoints))) {
        throw ArgumentError("grid of step " + std::to_string(g.step) + " would exceed " +
                            std::to_string(kMaxGridPoints) + " points");
    }
    return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

// Calls visit(x) on every grid point in increasing order.
template <typename Visit>
void for_each_grid_point(const MaximalDist& d, const GridSpec& g, Visit&& visit) {
    validate(g);
    if (d.degenerate()) {
        visit(d.mu_lo());
        return;
    }
    const std::size_t m = interior_count(d, g);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = d.mu_lo() + static_cast<double>(i) * g.step;
        if (x >= d.mu_hi()) {
            break;
        }
        visit(x);
    }
    visit(d.mu_hi());
}

double checked(double v, double x) {
    if (!std::isfinite(v)) {
        throw EvaluationError("function is not finite at x = " + std::to_string(x));
    }
    return v;
}

}  // namespace

MaximalDist::MaximalDist(double mu_lo, double mu_hi) : lo_(mu_lo), hi_(mu_hi) {
    if (!std::isfinite(mu_lo) || !std::isfinite(mu_hi)) {
        throw ArgumentError("maximal distribution bounds must be finite");
    }
    if (mu_lo > mu_hi) {
        throw ArgumentError("maximal distribution needs mu_lo <= mu_hi");
    }
}

GridSpec GridSpec::with_points(const MaximalDist& d, std::size_t n_points, bool refine) {
    if (d.degenerate()) {
        return GridSpec{1.0, refine};
    }
    if (n_points < 2) {
        throw ArgumentError("a grid on a nondegenerate interval needs at least 2 points");
    }
    return GridSpec{d.width() / static_cast<double>(n_points - 1), refine};
}

std::vector<double> grid_points(const MaximalDist& d, const GridSpec& g) {
    std::vector<double> pts;
    for_each_grid_point(d, g, [&](double x) { pts.push_back(x); });
    return pts;
}

double grid_spacing(const MaximalDist& d, const GridSpec& g) {
    validate(g);
    return d.degenerate() ? 0.0 : std::min(g.step, d.width());
}

IntervalMax eval_maximal(const MaximalDist& d, const BoundedLipschitzFn& f, const GridSpec& g) {
    validate(g);
    if (d.degenerate()) {
        return {checked(f(d.mu_lo()), d.mu_lo()), d.mu_lo(), 0.0};
    }

    IntervalMax best{-std::numeric_limits<double>::infinity(), d.mu_lo(), 0.0};
    for_each_grid_point(d, g, [&](double x) {
        const double v = checked(f(x), x);
        if (v > best.value) {
            best.value = v;
            best.argmax = x;
        }
    });
    const double spacing = grid_spacing(d, g);
    best.error_bound = f.lipschitz_const * spacing / 2.0;

    if (g.refine) {
        // Golden-section search on the two cells around the grid argmax.
        constexpr double inv_phi = 0.6180339887498949;
        double a = std::max(d.mu_lo(), best.argmax - spacing);
        double b = std::min(d.mu_hi(), best.argmax + spacing);
        double c = b - inv_phi * (b - a);
        double e = a + inv_phi * (b - a);
        double fc = checked(f(c), c);
        double fe = checked(f(e), e);
        for (int it = 0; it < 200 && (b - a) > 4.0 * std::numeric_limits<double>::epsilon() *
                                                    std::max(1.0, std::abs(best.argmax));
             ++it) {
            if (fc >= fe) {
                b = e;
                e = c;
                fe = fc;
                c = b - inv_phi * (b - a);
                fc = checked(f(c), c);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + inv_phi * (b - a);
                fe = checked(f(e), e);
            }
        }
        for (double x : {a, c, e, b}) {
            const double v = checked(f(x), x);
            if (v > best.value) {
                best.value = v;
                best.argmax = x;
            }
        }
        best.error_bound = f.lipschitz_const * (b - a) / 2.0;
    }
    return best;
}

ScenarioFamily dirac_family(const MaximalDist& d, std::size_t n_atoms) {
    if (d.degenerate()) {
        if (n_atoms == 0) {
            throw ArgumentError("dirac family needs at least one atom");
        }
        return ScenarioFamily({DiscreteMeasure::dirac(d.mu_lo())});
    }
    if (n_atoms < 2) {
        throw ArgumentError("dirac family on a nondegenerate interval needs n_atoms >= 2");
    }
    return dirac_family(d, GridSpec::with_points(d, n_atoms));
}

ScenarioFamily dirac_family(const MaximalDist& d, const GridSpec& g) {
    std::vector<DiscreteMeasure> measures;
    for_each_grid_point(d, g, [&](double x) { measures.push_back(DiscreteMeasure::dirac(x)); });
    return ScenarioFamily(std::move(measures));
}

BoundedValue convolve_scaled(const MaximalDist& d, double a, double b, const BoundedLipschitzFn& f,
                             const GridSpec& g) {
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ArgumentError("convolution weights a and b must be finite and nonnegative");
    }
    const std::vector<double> pts = grid_points(d, g);
    if (static_cast<double>(pts.size()) * static_cast<double>(pts.size()) > 2e8) {
        throw ArgumentError("convolution grid is too fine");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (double x : pts) {
        for (double xb : pts) {
            const double arg = a * x + b * xb;
            best = std::max(best, checked(f(arg), arg));
        }
    }
    return {best, f.lipschitz_const * (a + b) * grid_spacing(d, g) / 2.0};
}

double interval_distance(const MaximalDist& d, double x) noexcept {
    if (x < d.mu_lo()) {
        return d.mu_lo() - x;
    }
    if (x > d.mu_hi()) {
        return x - d.mu_hi();
    }
    return 0.0;
}

}  // namespace sublinear
