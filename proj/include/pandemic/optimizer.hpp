#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pandemic/loss.hpp"
#include "pandemic/scenario.hpp"

namespace pandemic {

enum class Method { enumeration, dp };

std::string to_string(Method m);
Method parse_method(const std::string& text);

struct RankedPath {
    InterventionPath path;
    LossBreakdown loss;
};

struct OptimizationResult {
    InterventionPath best_path;
    LossBreakdown best_loss;
    std::vector<RankedPath> ranking;  // ascending (cpl, path)
    Method method = Method::enumeration;
};

struct Deviation {
    std::size_t phase = 0;  // 0-based
    int alt_intensity = 0;
    double delta_cpl = 0.0;
};

struct SweepEntry {
    double lambda = 0.0;
    InterventionPath best_path;
    double el = 0.0;
    double tsl = 0.0;
    double cpl = 0.0;
};

struct LambdaSweep {
    std::vector<double> lambda_grid;
    std::vector<SweepEntry> entries;
};

inline constexpr std::size_t kMaxPathSpace = 1'000'000;

// Admissible paths in lexicographic order.
std::vector<InterventionPath> enumerate_paths(const ResolvedScenario& world);

// Ties in cpl go to the lexicographically smaller path.
bool ranks_before(const RankedPath& a, const RankedPath& b);

OptimizationResult optimize_enumerate(const ResolvedScenario& world);

// Backward recursion over the tree of phase-boundary states. Each node keeps
// the exact epidemic state and income ledger reached by its prefix, so a
// prefix is integrated once and shared by every path extending it.
OptimizationResult optimize_dp(const ResolvedScenario& world);

OptimizationResult optimize(const ResolvedScenario& world, Method method);

// CPL change of every admissible single-phase deviation from `path`.
std::vector<Deviation> deviation_check(const ResolvedScenario& world, const InterventionPath& path);

LambdaSweep lambda_sweep(const ResolvedScenario& world, const std::vector<double>& grid);

OptimizationResult optimize_enumerate(const Scenario& scenario);
OptimizationResult optimize_dp(const Scenario& scenario);
std::vector<Deviation> deviation_check(const Scenario& scenario, const InterventionPath& path);
LambdaSweep lambda_sweep(const Scenario& scenario, const std::vector<double>& grid);

}  // namespace pandemic
