#include "pandemic/scenario.hpp"

#include "pandemic/error.hpp"

namespace pandemic {

std::size_t Scenario::n_phases() const {
    if (const auto* s = std::get_if<PhaseSchedule>(&schedule)) return s->n_phases();
    return 4;
}

void Scenario::validate() const {
    if (name.empty()) throw ValidationError("name: must be non-empty");
    epidemic.validate();
    effects.validate();
    econ.validate();
    if (effects.alphabet_size() != econ.income_levels().size()) {
        throw ValidationError("effects: the income table has " + std::to_string(econ.income_levels().size()) +
                              " levels (y_peace, y_moral, y_min) but effects list " +
                              std::to_string(effects.alphabet_size()) + " intensities");
    }
    if (const auto* s = std::get_if<PhaseSchedule>(&schedule)) {
        s->validate(static_cast<double>(epidemic.horizon_days));
    } else {
        std::get<Milestones>(schedule).validate();
    }
    if (!forced_intensities.empty()) {
        if (forced_intensities.size() != n_phases()) {
            throw ValidationError("forced_intensities: expected " + std::to_string(n_phases()) +
                                  " entries (one per phase), got " + std::to_string(forced_intensities.size()));
        }
        for (std::size_t p = 0; p < forced_intensities.size(); ++p) {
            const auto& f = forced_intensities[p];
            if (f && (*f < 0 || static_cast<std::size_t>(*f) >= effects.alphabet_size())) {
                throw ValidationError("forced_intensities[" + std::to_string(p) + "]: intensity " +
                                      std::to_string(*f) + " outside the intensity alphabet");
            }
        }
    }
}

bool ResolvedScenario::admissible(const InterventionPath& path) const {
    const auto& forced = scenario.forced_intensities;
    if (forced.empty()) return true;
    for (std::size_t p = 0; p < forced.size() && p < path.size(); ++p) {
        if (forced[p] && *forced[p] != path[p]) return false;
    }
    return true;
}

ResolvedScenario resolve(const Scenario& scenario) {
    scenario.validate();
    ResolvedScenario out{scenario, {}};
    if (const auto* s = std::get_if<PhaseSchedule>(&scenario.schedule)) {
        out.schedule = *s;
    } else {
        out.schedule = derive_schedule(scenario.epidemic, scenario.effects, std::get<Milestones>(scenario.schedule));
    }
    return out;
}

}  // namespace pandemic
