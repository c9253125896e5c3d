#include "sublinear/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sublinear/error.hpp"

namespace sublinear {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        throw ArgumentError("discrete measure needs at least one atom");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const auto& a = atoms_[i];
        if (!std::isfinite(a.point)) {
            throw ArgumentError("atom " + std::to_string(i) + " has a non-finite point");
        }
        if (!(a.weight >= 0.0 && a.weight <= 1.0)) {
            throw ArgumentError("atom " + std::to_string(i) + " has weight outside [0, 1]");
        }
        total += a.weight;
    }
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
        throw ArgumentError("atom weights sum to " + std::to_string(total) + ", expected 1");
    }
}

DiscreteMeasure DiscreteMeasure::dirac(double point) {
    return DiscreteMeasure({Atom{point, 1.0}});
}

DiscreteMeasure DiscreteMeasure::uniform(std::span<const double> points) {
    if (points.empty()) {
        throw ArgumentError("uniform measure needs at least one point");
    }
    const double w = 1.0 / static_cast<double>(points.size());
    std::vector<Atom> atoms;
    atoms.reserve(points.size());
    for (double p : points) {
        atoms.push_back({p, w});
    }
    return DiscreteMeasure(std::move(atoms));
}

ScenarioFamily::ScenarioFamily(std::vector<DiscreteMeasure> measures)
    : measures_(std::move(measures)) {
    if (measures_.empty()) {
        throw ArgumentError("scenario family needs at least one measure");
    }
}

double expect_linear(const DiscreteMeasure& m, const std::function<double(double)>& f) {
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const auto atoms = m.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double v = f(atoms[i].point);
        if (!std::isfinite(v)) {
            throw EvaluationError("function is not finite at atom " + std::to_string(i) +
                                  " (point " + std::to_string(atoms[i].point) + ")");
        }
        sum += atoms[i].weight * v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return std::clamp(sum, lo, hi);
}

double expect_linear(const DiscreteMeasure& m, const BoundedLipschitzFn& f) {
    return expect_linear(m, f.eval);
}

SublinearValue sublinear_expect(const ScenarioFamily& fam, const std::function<double(double)>& f) {
    SublinearValue best{expect_linear(fam.measures()[0], f), 0};
    for (std::size_t i = 1; i < fam.size(); ++i) {
        const double v = expect_linear(fam.measures()[i], f);
        if (v > best.value) {
            best = {v, i};
        }
    }
    return best;
}

SublinearValue sublinear_expect(const ScenarioFamily& fam, const BoundedLipschitzFn& f) {
    return sublinear_expect(fam, f.eval);
}

double capacity(const ScenarioFamily& fam, const std::function<bool(double)>& event) {
    double best = 0.0;
    for (const auto& m : fam.measures()) {
        double mass = 0.0;
        for (const auto& a : m.atoms()) {
            if (event(a.point)) {
                mass += a.weight;
            }
        }
        best = std::max(best, std::clamp(mass, 0.0, 1.0));
    }
    return best;
}

}  // namespace sublinear
