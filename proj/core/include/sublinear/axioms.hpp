#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sublinear/scenario.hpp"

namespace sublinear {

/// Tolerance used for the sub-additivity and positive-homogeneity checks.
inline constexpr double kAxiomTolerance = 1e-12;

struct AxiomStats {
    std::string name;
    std::size_t checked = 0;
    std::size_t failures = 0;
    double worst_violation = 0.0;  // largest observed excess over the exact relation
};

struct AxiomReport {
    std::size_t cases = 0;
    std::uint64_t seed = 0;
    std::vector<AxiomStats> axioms;  // monotonicity, constant, subadditivity, homogeneity

    [[nodiscard]] bool all_passed() const noexcept;
};

struct AxiomSuiteConfig {
    std::size_t cases = 1000;
    std::uint64_t seed = 0;
    /// When set every case uses this family; otherwise a random family is
    /// drawn per case (1-5 measures with 1-8 atoms on [-5, 5]).
    std::optional<ScenarioFamily> family;
};

/// Draws random (family, f, g, lambda, c) cases and checks the four
/// defining properties of a sublinear expectation on sublinear_expect:
///   monotonicity (exact), constant preservation (exact),
///   sub-additivity and positive homogeneity (within kAxiomTolerance,
///   absolute or relative).
AxiomReport verify_axioms(const AxiomSuiteConfig& config);

}  // namespace sublinear
