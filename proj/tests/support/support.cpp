#include "support/support.hpp"

#include <algorithm>
#include <cmath>

#include "pandemic/io.hpp"

namespace testing {

std::string fixture(const std::string& name) { return std::string(PANDEMIC_SCENARIO_DIR) + "/" + name; }

pandemic::Scenario load_fixture(const std::string& name) { return pandemic::io::load_scenario(fixture(name)); }

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

EulerResult euler_oracle(const pandemic::EpidemicParams& p, const pandemic::InterventionEffect& e,
                         const pandemic::PhaseSchedule& schedule, const pandemic::InterventionPath& path,
                         double step) {
    const auto n_steps = static_cast<long>(std::llround(p.horizon_days / step));
    double s = p.population - p.initial_infected;
    double i = p.initial_infected;
    double r = 0.0;
    double c = p.initial_infected;
    EulerResult out;
    out.peak_height = -1.0;
    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * step;
        std::size_t phase = 0;
        while (phase < schedule.boundaries.size() && schedule.boundaries[phase] <= t) ++phase;
        const int level = path[phase];
        const double beta = p.beta0 * (1.0 - e.contact_cut[level]);
        const double imports = p.import_rate * (1.0 - e.import_cut[level]);
        const double n = s + i + r;
        const double infection = n > 0.0 ? beta * s * i / n : 0.0;
        const double incidence = infection + imports;
        if (incidence > out.peak_height) {
            out.peak_height = incidence;
            out.peak_time = t;
        }
        if (k == n_steps) break;
        const double recovery = p.gamma * i;
        s -= step * infection;
        i += step * (incidence - recovery);
        r += step * recovery;
        c += step * incidence;
    }
    out.attack_rate = c / p.population;
    out.deaths = p.ifr * c;
    return out;
}

pandemic::Scenario random_scenario(std::mt19937_64& rng, std::size_t max_phases) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto between = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };

    pandemic::Scenario s;
    s.name = "random";
    s.epidemic.population = std::round(between(1e4, 5e6));
    s.epidemic.initial_infected = std::round(between(0.0, 50.0));
    s.epidemic.beta0 = between(0.05, 0.6);
    s.epidemic.gamma = between(0.04, 0.25);
    s.epidemic.ifr = u(rng) < 0.05 ? 0.0 : between(0.0005, 0.05);
    s.epidemic.import_rate = between(0.0, 20.0);
    if (s.epidemic.initial_infected == 0.0 && s.epidemic.import_rate < 0.5) s.epidemic.import_rate = 1.0;
    s.epidemic.horizon_days = std::uniform_int_distribution<int>(40, 220)(rng);
    const double steps[] = {0.1, 0.25, 0.3, 0.5, 0.7};
    s.epidemic.step_days = steps[std::uniform_int_distribution<int>(0, 4)(rng)];

    auto cuts = [&] {
        double a = between(0.0, 1.0);
        double b = between(0.0, 1.0);
        if (a > b) std::swap(a, b);
        return std::vector<double>{0.0, a, b};
    };
    s.effects.contact_cut = cuts();
    s.effects.import_cut = cuts();
    if (s.effects.contact_cut.back() == 0.0) s.effects.contact_cut.back() = 0.5;

    const auto n_phases = std::uniform_int_distribution<std::size_t>(1, max_phases)(rng);
    std::vector<double> b;
    const double horizon = s.epidemic.horizon_days;
    while (b.size() + 1 < n_phases) {
        const double t = between(1.0, horizon - 1.0);
        if (std::none_of(b.begin(), b.end(), [&](double x) { return std::abs(x - t) < 0.5; })) b.push_back(t);
    }
    std::sort(b.begin(), b.end());
    s.schedule = pandemic::PhaseSchedule{b};

    s.econ.y_peace = between(100.0, 2000.0);
    s.econ.y_moral = s.econ.y_peace * between(0.9, 1.0);
    s.econ.y_min = s.econ.y_moral * between(0.8, 1.0);
    s.econ.escalation_rate = u(rng) < 0.5 ? 0.0 : between(0.0, 2.0);
    s.econ.lambda = std::pow(10.0, between(-2.0, 3.0));
    s.validate();
    return s;
}

pandemic::InterventionPath random_path(std::mt19937_64& rng, std::size_t n_phases, std::size_t alphabet) {
    std::uniform_int_distribution<int> d(0, static_cast<int>(alphabet) - 1);
    std::vector<int> v(n_phases);
    for (auto& x : v) x = d(rng);
    return pandemic::InterventionPath(v);
}

}  // namespace testing
