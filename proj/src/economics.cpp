#include "pandemic/economics.hpp"

#include <algorithm>
#include <cmath>

#include "pandemic/error.hpp"

namespace pandemic {

void EconomicParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(y_peace) || !finite(y_moral) || !finite(y_min) || !finite(escalation_rate) || !finite(lambda))
        throw ValidationError("econ: all fields must be finite");
    if (y_min < 0.0) throw ValidationError("econ.y_min: must be >= 0");
    if (y_moral < y_min) throw ValidationError("econ.y_moral: must be >= y_min");
    if (y_peace < y_moral) throw ValidationError("econ.y_peace: must be >= y_moral");
    if (lambda < 0.0) throw ValidationError("econ.lambda: must be >= 0");
    if (escalation_rate < 0.0) throw ValidationError("econ.escalation_rate: must be >= 0");
}

IncomeGapAccumulator::IncomeGapAccumulator(const EconomicParams& econ)
    : levels_(econ.income_levels()), y_peace_(econ.y_peace), escalation_(econ.escalation_rate) {}

double IncomeGapAccumulator::add_day(int intensity) {
    const auto top = static_cast<int>(levels_.size()) - 1;
    if (intensity < 0 || intensity > top) throw ValidationError("intensity outside the income level table");
    double income = levels_[static_cast<std::size_t>(intensity)];
    if (intensity == top) {
        // The floor rises during a lockdown but never above the next-milder level.
        const double ceiling = top > 0 ? levels_[static_cast<std::size_t>(top - 1)] : y_peace_;
        income = std::min(income + escalation_ * static_cast<double>(streak_), ceiling);
        ++streak_;
    } else {
        streak_ = 0;
    }
    income = std::min(income, y_peace_);
    total_ += y_peace_ - income;
    return income;
}

std::vector<int> daily_intensities(const PhaseSchedule& schedule, const InterventionPath& path, int horizon_days) {
    std::vector<int> out(static_cast<std::size_t>(std::max(horizon_days, 0)));
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = path[schedule.phase_at(static_cast<double>(d))];
    return out;
}

std::vector<double> daily_income(const EconomicParams& econ, const std::vector<int>& intensities) {
    IncomeGapAccumulator acc(econ);
    std::vector<double> out;
    out.reserve(intensities.size());
    for (int i : intensities) out.push_back(acc.add_day(i));
    return out;
}

}  // namespace pandemic
