#include "sublinear/joint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sublinear/error.hpp"

namespace sublinear {

namespace {

// One level of the backward recursion: either grid points of a maximal
// marginal or a scenario family.
struct Level {
    const ScenarioFamily* family = nullptr;
    std::vector<double> grid;
};

class Composer {
public:
    Composer(const JointSpec& j, const NaryLipschitzFn& f, const GridSpec& g)
        : f_(f), args_(j.size()) {
        double evaluations = 1.0;
        for (std::size_t i = 0; i < j.size(); ++i) {
            Level level;
            if (const auto* d = std::get_if<MaximalDist>(&j.marginals()[i])) {
                level.grid = grid_points(*d, g);
                evaluations *= static_cast<double>(level.grid.size());
                error_bound_ += f.lipschitz[i] * grid_spacing(*d, g) / 2.0;
            } else {
                level.family = &std::get<ScenarioFamily>(j.marginals()[i]);
                std::size_t atoms = 0;
                for (const auto& m : level.family->measures()) {
                    atoms += m.size();
                }
                evaluations *= static_cast<double>(atoms);
            }
            levels_.push_back(std::move(level));
        }
        if (evaluations > static_cast<double>(kMaxCompositionEvaluations)) {
            throw ArgumentError("independent composition would need more than " +
                                std::to_string(kMaxCompositionEvaluations) + " evaluations");
        }
    }

    BoundedValue run() { return {evaluate(0), error_bound_}; }

private:
    double evaluate(std::size_t depth) {
        if (depth == levels_.size()) {
            const double v = f_(args_);
            if (!std::isfinite(v)) {
                throw EvaluationError("joint function is not finite at a grid point");
            }
            return v;
        }
        const Level& level = levels_[depth];
        if (level.family == nullptr) {
            double best = -std::numeric_limits<double>::infinity();
            for (double x : level.grid) {
                args_[depth] = x;
                best = std::max(best, evaluate(depth + 1));
            }
            return best;
        }
        return sublinear_expect(*level.family, [this, depth](double x) {
                   args_[depth] = x;
                   return evaluate(depth + 1);
               }).value;
    }

    const NaryLipschitzFn& f_;
    std::vector<double> args_;
    std::vector<Level> levels_;
    double error_bound_ = 0.0;
};

}  // namespace

JointSpec::JointSpec(std::vector<Marginal> marginals) : marginals_(std::move(marginals)) {
    if (marginals_.empty()) {
        throw ArgumentError("joint specification needs at least one marginal");
    }
}

BoundedValue compose_independent(const JointSpec& j, const NaryLipschitzFn& f, const GridSpec& g) {
    if (f.arity() != j.size()) {
        throw ArgumentError("function arity " + std::to_string(f.arity()) + " does not match " +
                            std::to_string(j.size()) + " marginals");
    }
    return Composer(j, f, g).run();
}

AsymmetryProbe asymmetry_probe(const Marginal& x, const Marginal& y, const NaryLipschitzFn& f,
                               const GridSpec& g) {
    if (f.arity() != 2) {
        throw ArgumentError("asymmetry probe needs a function of two arguments");
    }
    const NaryLipschitzFn swapped{
        [&f](std::span<const double> v) {
            const double args[2] = {v[1], v[0]};
            return f(args);
        },
        {f.lipschitz[1], f.lipschitz[0]}};
    return {compose_independent(JointSpec({x, y}), f, g).value,
            compose_independent(JointSpec({y, x}), swapped, g).value};
}

BoundedLipschitzFn indicator_approx(double x_star, int k) {
    if (k < 1) {
        throw ArgumentError("indicator approximation needs k >= 1");
    }
    const double kk = static_cast<double>(k);
    return {[x_star, kk](double x) { return 1.0 / (1.0 + kk * std::abs(x - x_star)); }, kk, 1.0};
}

PointCapacity point_capacity(const JointSpec& j, std::span<const double> points, int k_max) {
    if (points.size() != j.size()) {
        throw ArgumentError("point capacity needs one point per marginal");
    }
    if (k_max < 0) {
        throw ArgumentError("k_max must be nonnegative");
    }
    std::vector<MaximalDist> dists;
    for (const auto& m : j.marginals()) {
        const auto* d = std::get_if<MaximalDist>(&m);
        if (d == nullptr) {
            throw ArgumentError("point capacity is defined for maximal marginals only");
        }
        dists.push_back(*d);
    }

    PointCapacity out;
    out.value = 1.0;
    for (std::size_t i = 0; i < dists.size(); ++i) {
        if (!dists[i].contains(points[i])) {
            out.value = 0.0;
        }
    }
    for (int k = 1; k <= k_max; ++k) {
        double prod = 1.0;
        for (std::size_t i = 0; i < dists.size(); ++i) {
            // 1/(1+k|x-x_i|) is decreasing in |x-x_i|: the maximizer over the
            // interval is the projection of x_i onto it.
            const double nearest = std::clamp(points[i], dists[i].mu_lo(), dists[i].mu_hi());
            prod *= indicator_approx(points[i], k)(nearest);
        }
        out.trace.push_back(prod);
    }
    return out;
}

}  // namespace sublinear
