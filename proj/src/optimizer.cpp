#include "pandemic/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "pandemic/error.hpp"

namespace pandemic {

namespace {

std::size_t path_space_size(std::size_t alphabet, std::size_t n_phases) {
    std::size_t total = 1;
    for (std::size_t p = 0; p < n_phases; ++p) {
        if (total > kMaxPathSpace / std::max<std::size_t>(alphabet, 1)) return kMaxPathSpace + 1;
        total *= alphabet;
    }
    return total;
}

void check_capacity(const ResolvedScenario& world) {
    const std::size_t size = path_space_size(world.alphabet_size(), world.n_phases());
    if (size > kMaxPathSpace) {
        throw CapacityError("path space " + std::to_string(world.alphabet_size()) + "^" +
                            std::to_string(world.n_phases()) + " exceeds " + std::to_string(kMaxPathSpace) +
                            " paths; use --method dp with fewer phases or a smaller alphabet");
    }
}

InterventionPath path_from_index(std::size_t index, std::size_t alphabet, std::size_t n_phases) {
    std::vector<int> v(n_phases);
    for (std::size_t p = n_phases; p-- > 0;) {
        v[p] = static_cast<int>(index % alphabet);
        index /= alphabet;
    }
    return InterventionPath(std::move(v));
}

std::size_t index_of(const InterventionPath& path, std::size_t alphabet) {
    std::size_t idx = 0;
    for (int i : path.intensities()) idx = idx * alphabet + static_cast<std::size_t>(i);
    return idx;
}

// Runs f(i) for i in [0, n) on all hardware threads; rethrows the first failure.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t workers =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
}

// Deaths and income gap of every path in the unconstrained space, indexed
// lexicographically.
struct PathTable {
    std::size_t alphabet = 0;
    std::size_t n_phases = 0;
    std::vector<double> deaths;
    std::vector<double> el;

    double deaths_of(const InterventionPath& p) const { return deaths[index_of(p, alphabet)]; }
    double el_of(const InterventionPath& p) const { return el[index_of(p, alphabet)]; }

    LossBreakdown breakdown(const InterventionPath& path, double lambda) const {
        LossBreakdown out;
        std::vector<int> pref(n_phases, 0);
        out.msl = deaths_of(InterventionPath(pref));
        out.sg_per_phase.resize(n_phases);
        double prev = out.msl;
        for (std::size_t p = 0; p < n_phases; ++p) {
            pref[p] = path[p];
            const double d = deaths_of(InterventionPath(pref));
            out.sg_per_phase[p] = prev - d;
            prev = d;
        }
        out.tsl = prev;
        out.sl = prev;
        out.el = el_of(path);
        out.lambda = lambda;
        out.cpl = out.el + lambda * out.tsl;
        return out;
    }
};

PathTable build_table(const ResolvedScenario& world) {
    check_capacity(world);
    PathTable t;
    t.alphabet = world.alphabet_size();
    t.n_phases = world.n_phases();
    const std::size_t size = path_space_size(t.alphabet, t.n_phases);
    t.deaths.resize(size);
    t.el.resize(size);
    parallel_for(size, [&](std::size_t i) {
        const InterventionPath path = path_from_index(i, t.alphabet, t.n_phases);
        t.deaths[i] = total_deaths(world, path);
        t.el[i] = economic_loss(world, path);
    });
    return t;
}

std::vector<int> allowed_at(const ResolvedScenario& world, std::size_t phase) {
    const auto& forced = world.scenario.forced_intensities;
    if (!forced.empty() && forced[phase]) return {*forced[phase]};
    std::vector<int> out(world.alphabet_size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    return out;
}

void sort_ranking(std::vector<RankedPath>& ranking) {
    std::sort(ranking.begin(), ranking.end(), ranks_before);
}

class TreeSolver {
public:
    explicit TreeSolver(const ResolvedScenario& world)
        : world_(world),
          integrator_(world.epidemic(), world.effects(), world.schedule),
          lambda_(world.econ().lambda) {
        const auto days = daily_intensities(world.schedule, InterventionPath::zeros(world.n_phases()),
                                            world.epidemic().horizon_days);
        days_in_phase_.assign(world.n_phases(), 0);
        for (std::size_t d = 0; d < days.size(); ++d)
            ++days_in_phase_[world.schedule.phase_at(static_cast<double>(d))];
    }

    struct Best {
        double cpl = std::numeric_limits<double>::infinity();
        std::vector<int> suffix;
    };

    Best solve() {
        std::vector<int> prefix;
        std::vector<double> chain;
        return descend(0, integrator_.start(), IncomeGapAccumulator(world_.econ()), prefix, chain);
    }

    std::vector<RankedPath>& leaves() { return leaves_; }

private:
    // Deaths of the prefix continued at intensity 0 to the horizon.
    double zero_continuation(std::size_t depth, IntegrationCursor c) const {
        for (std::size_t p = depth; p < world_.n_phases(); ++p) c = integrator_.run_phase(c, p, 0);
        return integrator_.deaths(c.state);
    }

    Best descend(std::size_t depth, const IntegrationCursor& cursor, const IncomeGapAccumulator& acc,
                 std::vector<int>& prefix, std::vector<double>& chain) {
        const std::size_t n = world_.n_phases();
        if (depth == n) {
            const double deaths = integrator_.deaths(cursor.state);
            chain.push_back(deaths);
            RankedPath leaf{InterventionPath(prefix), {}};
            LossBreakdown& loss = leaf.loss;
            loss.msl = chain.front();
            loss.sg_per_phase.resize(n);
            for (std::size_t p = 0; p < n; ++p) loss.sg_per_phase[p] = chain[p] - chain[p + 1];
            loss.tsl = deaths;
            loss.sl = deaths;
            loss.el = acc.total_gap();
            loss.lambda = lambda_;
            loss.cpl = loss.el + lambda_ * loss.tsl;
            chain.pop_back();
            Best b{loss.cpl, {}};
            leaves_.push_back(std::move(leaf));
            return b;
        }

        chain.push_back(zero_continuation(depth, cursor));
        Best best;
        for (int a : allowed_at(world_, depth)) {
            IncomeGapAccumulator next_acc = acc;
            for (int d = 0; d < days_in_phase_[depth]; ++d) next_acc.add_day(a);
            const IntegrationCursor next = integrator_.run_phase(cursor, depth, a);
            prefix.push_back(a);
            Best child = descend(depth + 1, next, next_acc, prefix, chain);
            prefix.pop_back();
            // Strict comparison keeps the smaller intensity on exact ties.
            if (child.cpl < best.cpl) {
                best.cpl = child.cpl;
                best.suffix.assign(1, a);
                best.suffix.insert(best.suffix.end(), child.suffix.begin(), child.suffix.end());
            }
        }
        chain.pop_back();
        return best;
    }

    const ResolvedScenario& world_;
    PhaseIntegrator integrator_;
    double lambda_;
    std::vector<int> days_in_phase_;
    std::vector<RankedPath> leaves_;
};

}  // namespace

std::string to_string(Method m) { return m == Method::dp ? "dp" : "enum"; }

Method parse_method(const std::string& text) {
    if (text == "enum" || text == "enumeration") return Method::enumeration;
    if (text == "dp") return Method::dp;
    throw ValidationError("method: expected 'enum' or 'dp', got '" + text + "'");
}

bool ranks_before(const RankedPath& a, const RankedPath& b) {
    if (a.loss.cpl != b.loss.cpl) return a.loss.cpl < b.loss.cpl;
    return a.path < b.path;
}

std::vector<InterventionPath> enumerate_paths(const ResolvedScenario& world) {
    check_capacity(world);
    const std::size_t size = path_space_size(world.alphabet_size(), world.n_phases());
    std::vector<InterventionPath> out;
    for (std::size_t i = 0; i < size; ++i) {
        InterventionPath p = path_from_index(i, world.alphabet_size(), world.n_phases());
        if (world.admissible(p)) out.push_back(std::move(p));
    }
    return out;
}

OptimizationResult optimize_enumerate(const ResolvedScenario& world) {
    const PathTable table = build_table(world);
    OptimizationResult out;
    out.method = Method::enumeration;
    for (auto& p : enumerate_paths(world)) {
        LossBreakdown loss = table.breakdown(p, world.econ().lambda);
        out.ranking.push_back({std::move(p), std::move(loss)});
    }
    sort_ranking(out.ranking);
    out.best_path = out.ranking.front().path;
    out.best_loss = out.ranking.front().loss;
    return out;
}

OptimizationResult optimize_dp(const ResolvedScenario& world) {
    check_capacity(world);
    TreeSolver solver(world);
    const TreeSolver::Best best = solver.solve();

    OptimizationResult out;
    out.method = Method::dp;
    out.ranking = std::move(solver.leaves());
    sort_ranking(out.ranking);
    out.best_path = InterventionPath(best.suffix);
    const auto it = std::find_if(out.ranking.begin(), out.ranking.end(),
                                 [&](const RankedPath& r) { return r.path == out.best_path; });
    out.best_loss = it->loss;
    return out;
}

OptimizationResult optimize(const ResolvedScenario& world, Method method) {
    return method == Method::dp ? optimize_dp(world) : optimize_enumerate(world);
}

std::vector<Deviation> deviation_check(const ResolvedScenario& world, const InterventionPath& path) {
    path.validate(world.n_phases(), world.alphabet_size());
    const double lambda = world.econ().lambda;
    auto cpl = [&](const InterventionPath& p) { return economic_loss(world, p) + lambda * total_deaths(world, p); };
    const double base = cpl(path);

    std::vector<Deviation> out;
    for (std::size_t phase = 0; phase < world.n_phases(); ++phase) {
        for (int alt : allowed_at(world, phase)) {
            if (alt == path[phase]) continue;
            std::vector<int> v = path.intensities();
            v[phase] = alt;
            out.push_back({phase, alt, cpl(InterventionPath(std::move(v))) - base});
        }
    }
    return out;
}

LambdaSweep lambda_sweep(const ResolvedScenario& world, const std::vector<double>& grid) {
    if (grid.empty()) throw ValidationError("lambdas: grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0.0)
            throw ValidationError("lambdas: values must be finite and >= 0");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("lambdas: grid must be strictly ascending");
    }
    const PathTable table = build_table(world);
    const std::vector<InterventionPath> paths = enumerate_paths(world);

    LambdaSweep out;
    out.lambda_grid = grid;
    for (double lambda : grid) {
        SweepEntry best;
        best.cpl = std::numeric_limits<double>::infinity();
        for (const auto& p : paths) {
            const double el = table.el_of(p);
            const double tsl = table.deaths_of(p);
            const double cpl = el + lambda * tsl;
            if (cpl < best.cpl) best = {lambda, p, el, tsl, cpl};
        }
        out.entries.push_back(std::move(best));
    }
    return out;
}

OptimizationResult optimize_enumerate(const Scenario& scenario) { return optimize_enumerate(resolve(scenario)); }
OptimizationResult optimize_dp(const Scenario& scenario) { return optimize_dp(resolve(scenario)); }

std::vector<Deviation> deviation_check(const Scenario& scenario, const InterventionPath& path) {
    return deviation_check(resolve(scenario), path);
}

LambdaSweep lambda_sweep(const Scenario& scenario, const std::vector<double>& grid) {
    return lambda_sweep(resolve(scenario), grid);
}

}  // namespace pandemic
