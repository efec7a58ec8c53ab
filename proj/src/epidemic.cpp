#include "pandemic/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pandemic/error.hpp"

namespace pandemic {

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require(bool ok, const std::string& field, const std::string& rule) {
    if (!ok) throw ValidationError(field + ": " + rule);
}

bool all_finite(const Compartments& s) {
    return std::isfinite(s.susceptible) && std::isfinite(s.infected) && std::isfinite(s.recovered) &&
           std::isfinite(s.cumulative_infections);
}

struct Rates {
    double beta;
    double imports;
};

struct Derivative {
    double ds, di, dr, dc;
};

Derivative rhs(const Compartments& s, const Rates& r, double gamma) {
    const double n = s.susceptible + s.infected + s.recovered;
    const double transmission = n > 0.0 ? r.beta * s.susceptible * s.infected / n : 0.0;
    return {-transmission, transmission + r.imports - gamma * s.infected, gamma * s.infected,
            transmission + r.imports};
}

Compartments axpy(const Compartments& s, double h, const Derivative& d) {
    return {s.susceptible + h * d.ds, s.infected + h * d.di, s.recovered + h * d.dr,
            s.cumulative_infections + h * d.dc};
}

Compartments rk4_step(const Compartments& s, const Rates& r, double gamma, double h) {
    const Derivative k1 = rhs(s, r, gamma);
    const Derivative k2 = rhs(axpy(s, h / 2, k1), r, gamma);
    const Derivative k3 = rhs(axpy(s, h / 2, k2), r, gamma);
    const Derivative k4 = rhs(axpy(s, h, k3), r, gamma);
    return {s.susceptible + h / 6 * (k1.ds + 2 * k2.ds + 2 * k3.ds + k4.ds),
            s.infected + h / 6 * (k1.di + 2 * k2.di + 2 * k3.di + k4.di),
            s.recovered + h / 6 * (k1.dr + 2 * k2.dr + 2 * k3.dr + k4.dr),
            s.cumulative_infections + h / 6 * (k1.dc + 2 * k2.dc + 2 * k3.dc + k4.dc)};
}

double new_infection_rate(const Compartments& s, const Rates& r) {
    const double n = s.susceptible + s.infected + s.recovered;
    const double transmission = n > 0.0 ? r.beta * s.susceptible * s.infected / n : 0.0;
    return transmission + r.imports;
}

void validate_cut(const std::vector<double>& cut, const std::string& name) {
    require(!cut.empty(), name, "must list at least intensity 0");
    require(cut.front() == 0.0, name + "[0]", "must be 0 (no intervention)");
    for (std::size_t i = 0; i < cut.size(); ++i) {
        const std::string field = name + "[" + std::to_string(i) + "]";
        require(std::isfinite(cut[i]) && cut[i] >= 0.0 && cut[i] <= 1.0, field, "must lie in [0, 1]");
        if (i > 0) require(cut[i] >= cut[i - 1], field, "must be non-decreasing in intensity");
    }
}

}  // namespace

void EpidemicParams::validate() const {
    require(std::isfinite(population) && population > 0.0, "epidemic.population", "must be > 0");
    require(std::isfinite(initial_infected) && initial_infected >= 0.0, "epidemic.initial_infected",
            "must be >= 0");
    require(initial_infected <= population, "epidemic.initial_infected", "must not exceed population");
    require(std::isfinite(beta0) && beta0 >= 0.0, "epidemic.beta0", "must be >= 0");
    require(std::isfinite(gamma) && gamma >= 0.0, "epidemic.gamma", "must be >= 0");
    require(std::isfinite(ifr) && ifr >= 0.0 && ifr <= 1.0, "epidemic.ifr", "must lie in [0, 1]");
    require(std::isfinite(import_rate) && import_rate >= 0.0, "epidemic.import_rate", "must be >= 0");
    require(horizon_days > 0, "epidemic.horizon_days", "must be a positive integer");
    require(std::isfinite(step_days) && step_days > 0.0 && step_days <= 1.0, "epidemic.step_days",
            "must lie in (0, 1]");
}

void InterventionEffect::validate() const {
    validate_cut(contact_cut, "effects.contact_cut");
    validate_cut(import_cut, "effects.import_cut");
    require(import_cut.size() == contact_cut.size(), "effects.import_cut",
            "must have one entry per intensity (" + std::to_string(contact_cut.size()) + ")");
}

std::size_t PhaseSchedule::phase_at(double t) const {
    return static_cast<std::size_t>(std::upper_bound(boundaries.begin(), boundaries.end(), t) -
                                    boundaries.begin());
}

double PhaseSchedule::phase_start(std::size_t phase) const {
    return phase == 0 ? 0.0 : boundaries.at(phase - 1);
}

double PhaseSchedule::phase_end(std::size_t phase, double horizon) const {
    return phase < boundaries.size() ? boundaries[phase] : horizon;
}

void PhaseSchedule::validate(double horizon) const {
    double prev = 0.0;
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        const std::string field = "schedule.boundaries[" + std::to_string(i) + "]";
        require(std::isfinite(boundaries[i]), field, "must be finite");
        require(boundaries[i] > prev, field,
                "must satisfy 0 < t1 < t2 < ... (got " + fmt_num(boundaries[i]) + ")");
        prev = boundaries[i];
    }
    if (!boundaries.empty()) {
        require(boundaries.back() < horizon, "schedule.boundaries",
                "last boundary must be before the horizon (" + fmt_num(horizon) + ")");
    }
}

void Milestones::validate() const {
    require(std::isfinite(spread_threshold) && spread_threshold > 0.0 && spread_threshold < 1.0,
            "schedule.milestones.spread_threshold", "must lie in (0, 1)");
    require(std::isfinite(tail_threshold) && tail_threshold > 0.0 && tail_threshold < 1.0,
            "schedule.milestones.tail_threshold", "must lie in (0, 1)");
}

InterventionPath::InterventionPath(std::vector<int> intensities) : intensities_(std::move(intensities)) {}

InterventionPath InterventionPath::zeros(std::size_t n_phases) {
    return InterventionPath(std::vector<int>(n_phases, 0));
}

InterventionPath InterventionPath::parse(std::string_view text) {
    std::vector<int> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) throw ValidationError("path: empty intensity in '" + std::string(text) + "'");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size())
            throw ValidationError("path: '" + token + "' is not an integer intensity");
        out.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || c == '-') {
            flush();
        } else if (c != ' ') {
            token.push_back(c);
        }
    }
    flush();
    return InterventionPath(std::move(out));
}

std::string InterventionPath::to_string(char sep) const {
    std::string s;
    for (std::size_t i = 0; i < intensities_.size(); ++i) {
        if (i) s.push_back(sep);
        s += std::to_string(intensities_[i]);
    }
    return s;
}

void InterventionPath::validate(std::size_t n_phases, std::size_t alphabet_size) const {
    if (intensities_.size() != n_phases) {
        throw ValidationError("path: expected " + std::to_string(n_phases) + " intensities (one per phase), got " +
                              std::to_string(intensities_.size()));
    }
    for (std::size_t p = 0; p < intensities_.size(); ++p) {
        if (intensities_[p] < 0 || static_cast<std::size_t>(intensities_[p]) >= alphabet_size) {
            throw ValidationError("path: intensity " + std::to_string(intensities_[p]) + " in phase " +
                                  std::to_string(p + 1) + " outside 0.." + std::to_string(alphabet_size - 1));
        }
    }
}

PhaseIntegrator::PhaseIntegrator(EpidemicParams params, InterventionEffect effects, PhaseSchedule schedule)
    : params_(std::move(params)), effects_(std::move(effects)), schedule_(std::move(schedule)) {
    params_.validate();
    effects_.validate();
    schedule_.validate(horizon());
}

IntegrationCursor PhaseIntegrator::start() const {
    IntegrationCursor c;
    c.state.susceptible = params_.population - params_.initial_infected;
    c.state.infected = params_.initial_infected;
    c.state.recovered = 0.0;
    c.state.cumulative_infections = params_.initial_infected;
    return c;
}

void PhaseIntegrator::append_sample(Trajectory& out, const Compartments& s, double t, int intensity) const {
    const Rates r{params_.beta0 * (1.0 - effects_.contact_cut[intensity]),
                  params_.import_rate * (1.0 - effects_.import_cut[intensity])};
    out.times.push_back(t);
    out.susceptible.push_back(s.susceptible);
    out.infected.push_back(s.infected);
    out.recovered.push_back(s.recovered);
    out.new_infections.push_back(new_infection_rate(s, r));
    out.cumulative_infections.push_back(s.cumulative_infections);
    out.cumulative_deaths.push_back(deaths(s));
    out.intensity_at.push_back(intensity);
}

IntegrationCursor PhaseIntegrator::run_phase(const IntegrationCursor& from, std::size_t phase, int intensity,
                                             Trajectory* record) const {
    if (phase >= schedule_.n_phases()) throw ValidationError("phase index out of range");
    if (intensity < 0 || static_cast<std::size_t>(intensity) >= effects_.alphabet_size())
        throw ValidationError("intensity " + std::to_string(intensity) + " outside the intensity alphabet");

    const Rates rates{params_.beta0 * (1.0 - effects_.contact_cut[intensity]),
                      params_.import_rate * (1.0 - effects_.import_cut[intensity])};
    const double end = schedule_.phase_end(phase, horizon());
    const double h = params_.step_days;

    IntegrationCursor c = from;
    if (record) append_sample(*record, c.state, c.time, intensity);
    while (c.time < end) {
        const double grid_next = static_cast<double>(c.grid_index + 1) * h;
        const double t_next = std::min(grid_next, end);
        const double dt = t_next - c.time;
        if (!(dt > 0.0)) break;
        c.state = rk4_step(c.state, rates, params_.gamma, dt);
        ++c.steps;
        if (!all_finite(c.state)) {
            throw IntegrationError("integration failed: non-finite state at step " + std::to_string(c.steps) +
                                   " (t=" + fmt_num(t_next) + ", phase " + std::to_string(phase + 1) + ")");
        }
        if (t_next == grid_next) ++c.grid_index;
        c.time = t_next;
        if (record && c.time < end) append_sample(*record, c.state, c.time, intensity);
    }
    if (record && phase + 1 == schedule_.n_phases()) append_sample(*record, c.state, c.time, intensity);
    return c;
}

Trajectory PhaseIntegrator::run(const InterventionPath& path) const {
    path.validate(schedule_.n_phases(), effects_.alphabet_size());
    Trajectory out;
    const auto expected = static_cast<std::size_t>(horizon() / params_.step_days) + schedule_.n_phases() + 1;
    out.times.reserve(expected);
    IntegrationCursor c = start();
    for (std::size_t p = 0; p < schedule_.n_phases(); ++p) c = run_phase(c, p, path[p], &out);
    return out;
}

Trajectory simulate(const EpidemicParams& params, const InterventionEffect& effects, const PhaseSchedule& schedule,
                    const InterventionPath& path) {
    return PhaseIntegrator(params, effects, schedule).run(path);
}

Trajectory baseline(const EpidemicParams& params, const InterventionEffect& effects, const PhaseSchedule& schedule) {
    return simulate(params, effects, schedule, InterventionPath::zeros(schedule.n_phases()));
}

PhaseSchedule derive_schedule(const EpidemicParams& params, const InterventionEffect& effects,
                              const Milestones& milestones) {
    milestones.validate();
    const Trajectory base = baseline(params, effects, PhaseSchedule{});
    const std::size_t n = base.size();

    std::size_t onset = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (base.infected[i] / params.population >= milestones.spread_threshold) {
            onset = i;
            break;
        }
    }
    const auto peak_it = std::max_element(base.new_infections.begin(), base.new_infections.end());
    const auto peak = static_cast<std::size_t>(peak_it - base.new_infections.begin());
    const double peak_height = *peak_it;

    std::size_t tail = n;
    for (std::size_t i = peak + 1; i < n; ++i) {
        if (base.new_infections[i] < milestones.tail_threshold * peak_height) {
            tail = i;
            break;
        }
    }

    const std::string hint = "; supply explicit schedule.boundaries instead";
    if (onset == n)
        throw ScheduleError("schedule derivation: prevalence never reaches spread_threshold " +
                            fmt_num(milestones.spread_threshold) + hint);
    if (!(peak_height > 0.0) || peak == 0 || peak + 1 >= n)
        throw ScheduleError("schedule derivation: baseline curve has no interior peak" + hint);
    if (tail == n)
        throw ScheduleError("schedule derivation: new infections never fall below tail_threshold " +
                            fmt_num(milestones.tail_threshold) + " of the peak" + hint);

    PhaseSchedule out{{base.times[onset], base.times[peak], base.times[tail]}};
    const double horizon = static_cast<double>(params.horizon_days);
    if (!(out.boundaries[0] > 0.0 && out.boundaries[0] < out.boundaries[1] && out.boundaries[2] < horizon)) {
        throw ScheduleError("schedule derivation: milestones out of order (onset " + fmt_num(out.boundaries[0]) +
                            ", peak " + fmt_num(out.boundaries[1]) + ", tail " + fmt_num(out.boundaries[2]) + ")" +
                            hint);
    }
    return out;
}

PeakStats peak_stats(const Trajectory& traj) {
    PeakStats s;
    if (traj.empty()) return s;
    const auto& x = traj.new_infections;
    const std::size_t n = x.size();

    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (x[i - 1] < x[i] && x[i] > x[i + 1]) maxima.push_back(i);
    }
    const auto global = static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
    s.local_maxima = maxima.size();
    s.peak_time = traj.times[global];
    s.peak_height = x[global];
    for (std::size_t i : maxima) {
        if (i > global) s.second_peak_height = std::max(s.second_peak_height, x[i]);
    }
    s.total_deaths = traj.cumulative_deaths.back();
    // Population at t = 0 (no imports yet).
    const double pop0 = traj.susceptible.front() + traj.infected.front() + traj.recovered.front();
    s.attack_rate = pop0 > 0.0 ? traj.cumulative_infections.back() / pop0 : 0.0;
    return s;
}

}  // namespace pandemic
