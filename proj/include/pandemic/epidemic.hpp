#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pandemic {

/// Epidemiological inputs of one scenario. Rates are per day, counts are
/// persons.
struct EpidemicParams {
    double population = 1.0e6;
    double initial_infected = 0.0;
    double beta0 = 0.0;        // baseline transmission rate
    double gamma = 0.1;        // recovery rate
    double ifr = 0.0;          // infection fatality ratio
    double import_rate = 0.0;  // importations per day
    int horizon_days = 0;
    double step_days = 0.25;   // RK4 step

    void validate() const;
};

/// Fraction by which each intensity level cuts transmission and importation.
/// Index = intensity. Level 0 must be the no-intervention level.
struct InterventionEffect {
    std::vector<double> contact_cut{0.0, 0.5, 0.75};
    std::vector<double> import_cut{0.0, 0.5, 0.9};

    std::size_t alphabet_size() const { return contact_cut.size(); }
    void validate() const;
};

/// Interior phase boundaries (days). n boundaries split [0, horizon] into
/// n + 1 half-open phases [start, end).
struct PhaseSchedule {
    std::vector<double> boundaries;

    std::size_t n_phases() const { return boundaries.size() + 1; }
    std::size_t phase_at(double t) const;
    double phase_start(std::size_t phase) const;
    double phase_end(std::size_t phase, double horizon) const;
    void validate(double horizon) const;

    bool operator==(const PhaseSchedule&) const = default;
};

/// Milestones used to cut phases out of the baseline curve.
struct Milestones {
    double spread_threshold = 1.0e-3;  // fraction of the population infected
    double tail_threshold = 0.25;      // fraction of the baseline peak

    void validate() const;
    bool operator==(const Milestones&) const = default;
};

/// One intensity per phase. Ordering is lexicographic.
class InterventionPath {
public:
    InterventionPath() = default;
    explicit InterventionPath(std::vector<int> intensities);

    static InterventionPath zeros(std::size_t n_phases);
    // Accepts "0,2,1,0" as well as the "0-2-1-0" form used in CSV output.
    static InterventionPath parse(std::string_view text);

    std::size_t size() const { return intensities_.size(); }
    int operator[](std::size_t phase) const { return intensities_[phase]; }
    const std::vector<int>& intensities() const { return intensities_; }
    std::string to_string(char sep = ',') const;

    void validate(std::size_t n_phases, std::size_t alphabet_size) const;

    auto operator<=>(const InterventionPath&) const = default;
    bool operator==(const InterventionPath&) const = default;

private:
    std::vector<int> intensities_;
};

struct Compartments {
    double susceptible = 0.0;
    double infected = 0.0;
    double recovered = 0.0;
    double cumulative_infections = 0.0;  // seeds + transmissions + imports
};

/// Sampled epidemic curve. Every vector has one entry per sample.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> susceptible;
    std::vector<double> infected;
    std::vector<double> recovered;
    std::vector<double> new_infections;  // instantaneous rate, per day
    std::vector<double> cumulative_infections;
    std::vector<double> cumulative_deaths;
    std::vector<int> intensity_at;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
};

struct IntegrationCursor {
    Compartments state;
    double time = 0.0;
    long grid_index = 0;  // last grid point k*step reached
    long steps = 0;
};

/// Fixed-step RK4 integrator that advances one phase at a time.
///
/// The step grid is global (k * step_days); a phase boundary that falls
/// between grid points gets one shortened step, so integrating a path phase
/// by phase from stored cursors is bit-identical to integrating it in one go.
class PhaseIntegrator {
public:
    PhaseIntegrator(EpidemicParams params, InterventionEffect effects, PhaseSchedule schedule);

    IntegrationCursor start() const;

    // Integrates `phase` at `intensity` from `from` to the phase end. When
    // `record` is set, samples in [start, end) are appended; the last phase
    // also appends the horizon sample.
    IntegrationCursor run_phase(const IntegrationCursor& from, std::size_t phase, int intensity,
                                Trajectory* record = nullptr) const;

    Trajectory run(const InterventionPath& path) const;

    double deaths(const Compartments& state) const { return params_.ifr * state.cumulative_infections; }
    double horizon() const { return static_cast<double>(params_.horizon_days); }

    const EpidemicParams& params() const { return params_; }
    const InterventionEffect& effects() const { return effects_; }
    const PhaseSchedule& schedule() const { return schedule_; }

private:
    void append_sample(Trajectory& out, const Compartments& s, double t, int intensity) const;

    EpidemicParams params_;
    InterventionEffect effects_;
    PhaseSchedule schedule_;
};

Trajectory simulate(const EpidemicParams& params, const InterventionEffect& effects,
                    const PhaseSchedule& schedule, const InterventionPath& path);

// simulate() with the all-zero path.
Trajectory baseline(const EpidemicParams& params, const InterventionEffect& effects,
                    const PhaseSchedule& schedule);

// Cuts four phases out of the uninterrupted baseline run: spread onset,
// baseline peak, and the point where the tail falls below the threshold.
PhaseSchedule derive_schedule(const EpidemicParams& params, const InterventionEffect& effects,
                              const Milestones& milestones);

struct PeakStats {
    double peak_time = 0.0;
    double peak_height = 0.0;
    double second_peak_height = 0.0;
    double attack_rate = 0.0;
    double total_deaths = 0.0;
    std::size_t local_maxima = 0;
};

PeakStats peak_stats(const Trajectory& traj);

}  // namespace pandemic
