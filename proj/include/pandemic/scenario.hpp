#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pandemic/economics.hpp"
#include "pandemic/epidemic.hpp"

namespace pandemic {

/// A full epidemic-economy world.
///
/// The schedule is either explicit or a milestone spec resolved against the
/// baseline run. `forced_intensities` optionally pins phases (e.g. a
/// government that only reacts from phase 2 on); empty means every phase is
/// free.
struct Scenario {
    std::string name;
    std::string version = "1";
    EpidemicParams epidemic;
    InterventionEffect effects;
    std::variant<PhaseSchedule, Milestones> schedule = Milestones{};
    EconomicParams econ;
    std::vector<std::optional<int>> forced_intensities;

    void validate() const;
    std::size_t n_phases() const;
    std::size_t alphabet_size() const { return effects.alphabet_size(); }
};

/// A scenario with its schedule pinned. Every operation downstream of the
/// loader works on this so that the baseline is derived once.
struct ResolvedScenario {
    Scenario scenario;
    PhaseSchedule schedule;

    const EpidemicParams& epidemic() const { return scenario.epidemic; }
    const InterventionEffect& effects() const { return scenario.effects; }
    const EconomicParams& econ() const { return scenario.econ; }
    std::size_t n_phases() const { return schedule.n_phases(); }
    std::size_t alphabet_size() const { return scenario.effects.alphabet_size(); }

    // True when the path honours forced_intensities.
    bool admissible(const InterventionPath& path) const;
};

ResolvedScenario resolve(const Scenario& scenario);

}  // namespace pandemic
