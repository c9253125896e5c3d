#include "sublinear/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace sublinear {

namespace {

using Fn = std::function<double(double)>;

ScenarioFamily random_family(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_measures(1, 5);
    std::uniform_int_distribution<int> n_atoms(1, 8);
    std::uniform_real_distribution<double> point(-5.0, 5.0);
    std::uniform_real_distribution<double> raw_weight(0.01, 1.0);

    std::vector<DiscreteMeasure> measures;
    const int m = n_measures(rng);
    for (int i = 0; i < m; ++i) {
        const int k = n_atoms(rng);
        std::vector<Atom> atoms(static_cast<std::size_t>(k));
        double total = 0.0;
        for (auto& a : atoms) {
            a.point = point(rng);
            a.weight = raw_weight(rng);
            total += a.weight;
        }
        for (auto& a : atoms) {
            a.weight /= total;
        }
        measures.emplace_back(std::move(atoms));
    }
    return ScenarioFamily(std::move(measures));
}

// Random Lipschitz test function drawn from a few shapes.
Fn random_function(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> shape(0, 4);
    std::uniform_real_distribution<double> par(-3.0, 3.0);
    const double a = par(rng);
    const double b = par(rng);
    const double c = par(rng);
    switch (shape(rng)) {
        case 0: return [=](double x) { return a * x + b; };
        case 1: return [=](double x) { return a * std::abs(x - c); };
        case 2: return [=](double x) { return a * std::sin(b * x + c); };
        case 3: return [=](double x) { return std::max(a * x + b, c); };
        default: return [=](double x) { return a * std::min(std::abs(x - c), 2.0) + b; };
    }
}

}  // namespace

bool AxiomReport::all_passed() const noexcept {
    return std::all_of(axioms.begin(), axioms.end(),
                       [](const AxiomStats& s) { return s.failures == 0 && s.checked > 0; });
}

AxiomReport verify_axioms(const AxiomSuiteConfig& config) {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> lambda_dist(0.0, 10.0);
    std::uniform_real_distribution<double> const_dist(-10.0, 10.0);

    AxiomStats mono{"monotonicity"};
    AxiomStats constant{"constant_preserving"};
    AxiomStats subadd{"sub_additivity"};
    AxiomStats homog{"positive_homogeneity"};

    for (std::size_t i = 0; i < config.cases; ++i) {
        const ScenarioFamily fam = config.family ? *config.family : random_family(rng);
        const Fn f = random_function(rng);
        const Fn g = random_function(rng);
        const Fn h = random_function(rng);
        // every tenth case exercises lambda = 0
        const double lambda = (i % 10 == 0) ? 0.0 : lambda_dist(rng);
        const double c = const_dist(rng);

        const double ef = sublinear_expect(fam, f).value;
        const double eg = sublinear_expect(fam, g).value;

        // f <= f + |h| pointwise
        const double upper = sublinear_expect(fam, [&](double x) { return f(x) + std::abs(h(x)); }).value;
        ++mono.checked;
        if (!(ef <= upper)) {
            ++mono.failures;
            mono.worst_violation = std::max(mono.worst_violation, ef - upper);
        }

        const double ec = sublinear_expect(fam, [c](double) { return c; }).value;
        ++constant.checked;
        if (ec != c) {
            ++constant.failures;
            constant.worst_violation = std::max(constant.worst_violation, std::abs(ec - c));
        }

        const double esum = sublinear_expect(fam, [&](double x) { return f(x) + g(x); }).value;
        const double excess = esum - (ef + eg);
        ++subadd.checked;
        subadd.worst_violation = std::max(subadd.worst_violation, excess);
        if (excess > kAxiomTolerance && excess > kAxiomTolerance * (std::abs(ef) + std::abs(eg))) {
            ++subadd.failures;
        }

        const double escaled = sublinear_expect(fam, [&](double x) { return lambda * f(x); }).value;
        const double diff = std::abs(escaled - lambda * ef);
        ++homog.checked;
        homog.worst_violation = std::max(homog.worst_violation, diff);
        if (diff > kAxiomTolerance && diff > kAxiomTolerance * std::abs(lambda * ef)) {
            ++homog.failures;
        }
    }

    AxiomReport report;
    report.cases = config.cases;
    report.seed = config.seed;
    report.axioms = {mono, constant, subadd, homog};
    return report;
}

}  // namespace sublinear
