#pragma once

#include <string>
#include <vector>

#include "pandemic/economics.hpp"
#include "pandemic/epidemic.hpp"
#include "pandemic/scenario.hpp"

namespace pandemic {

struct SocialLosses {
    double msl = 0.0;                  // deaths with no intervention at all
    double tsl = 0.0;                  // deaths under the path
    std::vector<double> sg_per_phase;  // deaths averted credited to each phase
};

struct LossBreakdown {
    double msl = 0.0;
    double sl = 0.0;  // realized deaths under the path (equals tsl)
    double tsl = 0.0;
    std::vector<double> sg_per_phase;
    double el = 0.0;
    double cpl = 0.0;
    double lambda = 0.0;
};

struct FrontierPoint {
    double intensity = 0.0;
    double health_capital = 0.0;
    double income = 0.0;
    std::string label;  // "peacetime", "moral_imperative", "lockdown" at the anchors
};

/// How large the income gaps are relative to peacetime income, for reports.
struct EconomicSummary {
    double lockdown_gap_per_day = 0.0;
    double lockdown_gap_share = 0.0;  // (y_peace - y_min) / y_peace
    double annual_peace_income = 0.0;
    double annualized_lockdown_loss = 0.0;
    double el_share_of_horizon_income = 0.0;
};

double total_deaths(const ResolvedScenario& world, const InterventionPath& path);

// Prefix decomposition: sg[p] = D(prefix_p) - D(prefix_{p+1}), where prefix_k
// follows `path` in the first k phases and stays at intensity 0 afterwards.
SocialLosses social_losses(const ResolvedScenario& world, const InterventionPath& path);

double economic_loss(const ResolvedScenario& world, const InterventionPath& path);

// cpl = el + lambda * tsl
LossBreakdown combined_loss(const ResolvedScenario& world, const InterventionPath& path);

SocialLosses social_losses(const Scenario& scenario, const InterventionPath& path);
double economic_loss(const Scenario& scenario, const InterventionPath& path);
LossBreakdown combined_loss(const Scenario& scenario, const InterventionPath& path);

EconomicSummary summarize_economics(const EconomicParams& econ, double el, int horizon_days);

// Health capital at continuous intensity i: contact_cut interpolated
// linearly between integer levels and normalized by the top level.
double health_capital(const InterventionEffect& effects, double intensity);

// Y(H) = y_peace - (y_peace - y_min) * H^gamma_exp
double frontier_income(const EconomicParams& econ, double health, double gamma_exp);

// `samples` evenly spaced intensities over [0, top], plus the integer anchors.
std::vector<FrontierPoint> frontier(const EconomicParams& econ, const InterventionEffect& effects, double gamma_exp,
                                    std::size_t samples);

}  // namespace pandemic
