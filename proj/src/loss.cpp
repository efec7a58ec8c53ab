#include "pandemic/loss.hpp"

#include <algorithm>
#include <cmath>

#include "pandemic/error.hpp"

namespace pandemic {

namespace {

InterventionPath prefix(const InterventionPath& path, std::size_t k) {
    std::vector<int> v = path.intensities();
    std::fill(v.begin() + static_cast<std::ptrdiff_t>(k), v.end(), 0);
    return InterventionPath(std::move(v));
}

const char* anchor_label(std::size_t level, std::size_t top) {
    if (level == 0) return "peacetime";
    if (level == top) return "lockdown";
    if (level == 1) return "moral_imperative";
    return "";
}

}  // namespace

double total_deaths(const ResolvedScenario& world, const InterventionPath& path) {
    const PhaseIntegrator integrator(world.epidemic(), world.effects(), world.schedule);
    path.validate(world.n_phases(), world.alphabet_size());
    IntegrationCursor c = integrator.start();
    for (std::size_t p = 0; p < world.n_phases(); ++p) c = integrator.run_phase(c, p, path[p]);
    return integrator.deaths(c.state);
}

SocialLosses social_losses(const ResolvedScenario& world, const InterventionPath& path) {
    path.validate(world.n_phases(), world.alphabet_size());
    const std::size_t n = world.n_phases();

    std::vector<double> chain(n + 1);
    chain[0] = total_deaths(world, InterventionPath::zeros(n));
    for (std::size_t k = 1; k <= n; ++k) {
        // A zero-intensity phase leaves the prefix unchanged: reuse, SG is exactly 0.
        chain[k] = path[k - 1] == 0 ? chain[k - 1] : total_deaths(world, prefix(path, k));
    }

    SocialLosses out;
    out.msl = chain[0];
    out.tsl = chain[n];
    out.sg_per_phase.resize(n);
    for (std::size_t p = 0; p < n; ++p) out.sg_per_phase[p] = chain[p] - chain[p + 1];
    return out;
}

double economic_loss(const ResolvedScenario& world, const InterventionPath& path) {
    path.validate(world.n_phases(), world.alphabet_size());
    IncomeGapAccumulator acc(world.econ());
    for (int i : daily_intensities(world.schedule, path, world.epidemic().horizon_days)) acc.add_day(i);
    return acc.total_gap();
}

LossBreakdown combined_loss(const ResolvedScenario& world, const InterventionPath& path) {
    const SocialLosses social = social_losses(world, path);
    LossBreakdown out;
    out.msl = social.msl;
    out.tsl = social.tsl;
    out.sl = social.tsl;
    out.sg_per_phase = social.sg_per_phase;
    out.el = economic_loss(world, path);
    out.lambda = world.econ().lambda;
    out.cpl = out.el + out.lambda * out.tsl;
    return out;
}

SocialLosses social_losses(const Scenario& scenario, const InterventionPath& path) {
    return social_losses(resolve(scenario), path);
}

double economic_loss(const Scenario& scenario, const InterventionPath& path) {
    return economic_loss(resolve(scenario), path);
}

LossBreakdown combined_loss(const Scenario& scenario, const InterventionPath& path) {
    return combined_loss(resolve(scenario), path);
}

EconomicSummary summarize_economics(const EconomicParams& econ, double el, int horizon_days) {
    EconomicSummary s;
    s.lockdown_gap_per_day = econ.y_peace - econ.y_min;
    s.lockdown_gap_share = econ.y_peace > 0.0 ? s.lockdown_gap_per_day / econ.y_peace : 0.0;
    s.annual_peace_income = 365.0 * econ.y_peace;
    s.annualized_lockdown_loss = 365.0 * s.lockdown_gap_per_day;
    const double horizon_income = econ.y_peace * static_cast<double>(horizon_days);
    s.el_share_of_horizon_income = horizon_income > 0.0 ? el / horizon_income : 0.0;
    return s;
}

double health_capital(const InterventionEffect& effects, double intensity) {
    const auto& cut = effects.contact_cut;
    const double top = static_cast<double>(cut.size() - 1);
    const double i = std::clamp(intensity, 0.0, top);
    const auto lo = static_cast<std::size_t>(std::floor(i));
    const std::size_t hi = std::min(lo + 1, cut.size() - 1);
    const double frac = i - static_cast<double>(lo);
    const double c = cut[lo] + (cut[hi] - cut[lo]) * frac;
    return c / cut.back();
}

double frontier_income(const EconomicParams& econ, double health, double gamma_exp) {
    return econ.y_peace - (econ.y_peace - econ.y_min) * std::pow(health, gamma_exp);
}

std::vector<FrontierPoint> frontier(const EconomicParams& econ, const InterventionEffect& effects, double gamma_exp,
                                    std::size_t samples) {
    econ.validate();
    effects.validate();
    if (!(gamma_exp > 1.0)) throw ValidationError("gamma_exp: must be > 1 (income must be flat near peacetime)");
    if (samples < 3) throw ValidationError("samples: must be >= 3");
    if (!(effects.contact_cut.back() > 0.0))
        throw ValidationError("effects.contact_cut: top intensity must cut contacts to normalize health capital");
    if (effects.alphabet_size() < 2) throw ValidationError("effects: need at least two intensity levels");

    const std::size_t top = effects.alphabet_size() - 1;
    std::vector<double> grid;
    grid.reserve(samples + top + 1);
    for (std::size_t k = 0; k < samples; ++k)
        grid.push_back(static_cast<double>(top) * static_cast<double>(k) / static_cast<double>(samples - 1));
    for (std::size_t level = 0; level <= top; ++level) grid.push_back(static_cast<double>(level));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<FrontierPoint> out;
    out.reserve(grid.size());
    for (double i : grid) {
        FrontierPoint pt;
        pt.intensity = i;
        pt.health_capital = health_capital(effects, i);
        pt.income = frontier_income(econ, pt.health_capital, gamma_exp);
        if (i == std::floor(i)) pt.label = anchor_label(static_cast<std::size_t>(i), top);
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace pandemic
