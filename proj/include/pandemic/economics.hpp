#pragma once

#include <cstddef>
#include <vector>

#include "pandemic/epidemic.hpp"

namespace pandemic {

struct EconomicParams {
    double y_peace = 0.0;          // income per day, no intervention
    double y_moral = 0.0;          // income per day at intensity 1
    double y_min = 0.0;            // lockdown floor, income per day at the top intensity
    double escalation_rate = 0.0;  // per-day rise of the floor during a lockdown streak
    double lambda = 0.0;           // currency value of one death

    void validate() const;

    // Income per day indexed by intensity, before escalation.
    std::vector<double> income_levels() const { return {y_peace, y_moral, y_min}; }

    bool operator==(const EconomicParams&) const = default;
};

/// Running day-by-day income gap. The top intensity is the lockdown; its
/// floor rises by escalation_rate for every consecutive lockdown day already
/// served, capped at the moral-imperative income.
class IncomeGapAccumulator {
public:
    explicit IncomeGapAccumulator(const EconomicParams& econ);

    // Income produced on a day spent at `intensity`, then advances the streak.
    double add_day(int intensity);

    double total_gap() const { return total_; }
    int lockdown_streak() const { return streak_; }

private:
    std::vector<double> levels_;
    double y_peace_;
    double escalation_;
    double total_ = 0.0;
    int streak_ = 0;
};

// Intensity in force on each whole day 0..horizon-1 (the phase containing
// the start of the day decides).
std::vector<int> daily_intensities(const PhaseSchedule& schedule, const InterventionPath& path, int horizon_days);

// Income produced on each day under the given daily intensities.
std::vector<double> daily_income(const EconomicParams& econ, const std::vector<int>& intensities);

}  // namespace pandemic
