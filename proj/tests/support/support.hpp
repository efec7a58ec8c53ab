#pragma once

#include <random>
#include <string>

#include "pandemic/epidemic.hpp"
#include "pandemic/scenario.hpp"

namespace testing {

std::string fixture(const std::string& name);
pandemic::Scenario load_fixture(const std::string& name);

double rel_diff(double a, double b);

// Forward Euler on a uniform grid, written independently of the RK4 engine.
struct EulerResult {
    double peak_time = 0.0;
    double peak_height = 0.0;
    double attack_rate = 0.0;
    double deaths = 0.0;
};

EulerResult euler_oracle(const pandemic::EpidemicParams& params, const pandemic::InterventionEffect& effects,
                         const pandemic::PhaseSchedule& schedule, const pandemic::InterventionPath& path,
                         double step);

// Valid scenario with explicit boundaries and 1..max_phases phases.
pandemic::Scenario random_scenario(std::mt19937_64& rng, std::size_t max_phases);
pandemic::InterventionPath random_path(std::mt19937_64& rng, std::size_t n_phases, std::size_t alphabet);

}  // namespace testing
