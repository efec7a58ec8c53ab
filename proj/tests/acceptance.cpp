// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "pandemic/cli.hpp"
#include "pandemic/debt.hpp"
#include "pandemic/io.hpp"
#include "pandemic/loss.hpp"
#include "pandemic/optimizer.hpp"
#include "support/support.hpp"

using namespace pandemic;
using testing::rel_diff;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ResolvedScenario world(const char* name) { return resolve(testing::load_fixture(name)); }

double deaths(const ResolvedScenario& w, std::vector<int> path) { return total_deaths(w, InterventionPath(path)); }

Outcome telescoping() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    for (int draw = 0; draw < 1000; ++draw) {
        const ResolvedScenario w = resolve(testing::random_scenario(rng, 5));
        const auto path = testing::random_path(rng, w.n_phases(), w.alphabet_size());
        const auto s = social_losses(w, path);
        double sum = 0.0;
        for (double sg : s.sg_per_phase) sum += sg;
        const double residual = std::abs(s.msl - sum - s.tsl);
        if (residual > 1e-9 * s.msl) return {false, "draw " + std::to_string(draw) + " residual " + num(residual)};
        if (s.msl > 0.0) worst = std::max(worst, residual / s.msl);
    }
    const double t = seconds_since(start);
    return {t < 60.0, "1000 draws, worst relative residual " + num(worst) + ", " + num(t) + " s"};
}

Outcome single_peaked_baseline() {
    const ResolvedScenario w = world("early_containment.json");
    const auto stats = peak_stats(baseline(w.epidemic(), w.effects(), w.schedule));
    return {stats.local_maxima == 1, std::to_string(stats.local_maxima) + " local max at day " + num(stats.peak_time)};
}

Outcome early_weak_equals_strong() {
    const ResolvedScenario w = world("early_containment.json");
    const double weak = deaths(w, {1, 0, 0, 0});
    const double strong = deaths(w, {2, 0, 0, 0});
    const double d = rel_diff(weak, strong);
    return {d <= 0.05, "deaths 1000 " + num(weak) + " vs 2000 " + num(strong) + ", differ " + num(100 * d) + "%"};
}

Outcome peak_weak_differs_from_strong() {
    const ResolvedScenario w = world("early_containment.json");
    const double weak = deaths(w, {0, 1, 0, 0});
    const double strong = deaths(w, {0, 2, 0, 0});
    const double d = rel_diff(weak, strong);
    return {d >= 0.30, "deaths 0100 " + num(weak) + " vs 0200 " + num(strong) + ", differ " + num(100 * d) + "%"};
}

Outcome premature_relaxation() {
    const ResolvedScenario w = world("premature_relaxation.json");
    const auto relaxed = peak_stats(simulate(w.epidemic(), w.effects(), w.schedule, InterventionPath({0, 2, 1, 0})));
    const auto held = peak_stats(simulate(w.epidemic(), w.effects(), w.schedule, InterventionPath({0, 2, 2, 0})));
    const double ratio = relaxed.second_peak_height / relaxed.peak_height;
    return {ratio >= 0.2 && held.second_peak_height == 0.0,
            "0210 second/first peak " + num(ratio) + "; 0220 second peak " + num(held.second_peak_height)};
}

Outcome example_paths() {
    std::string detail;
    bool ok = true;
    const std::pair<const char*, InterventionPath> cases[] = {
        {"early_containment.json", InterventionPath({1, 1, 0, 0})},
        {"late_response.json", InterventionPath({0, 2, 1, 0})},
    };
    for (const auto& [name, expected] : cases) {
        const auto start = std::chrono::steady_clock::now();
        const ResolvedScenario w = world(name);
        const auto r = optimize_enumerate(w);
        bool certified = true;
        for (const auto& d : deviation_check(w, r.best_path)) certified = certified && d.delta_cpl >= 0.0;
        const double t = seconds_since(start);
        ok = ok && r.best_path == expected && certified && t < 10.0;
        if (!detail.empty()) detail += "; ";
        detail += std::string(name) + " -> " + r.best_path.to_string() + (certified ? " certified" : " NOT certified") +
                  " (" + std::to_string(r.ranking.size()) + " paths, " + num(t) + " s)";
    }
    return {ok, detail};
}

Outcome dp_equals_enumeration() {
    std::mt19937_64 rng(77001);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const ResolvedScenario w = resolve(testing::random_scenario(rng, 5));
        const auto e = optimize_enumerate(w);
        const auto d = optimize_dp(w);
        const double diff = rel_diff(e.best_loss.cpl, d.best_loss.cpl);
        if (!(e.best_path == d.best_path) || diff > 1e-9)
            return {false, "scenario " + std::to_string(k) + ": enum " + e.best_path.to_string() + " dp " +
                               d.best_path.to_string()};
        worst = std::max(worst, diff);
    }
    return {true, "100 scenarios, identical argmin, worst CPL difference " + num(worst)};
}

Outcome lambda_zero_corner() {
    std::string detail;
    bool ok = true;
    for (const char* name : {"early_containment.json", "late_response.json", "premature_relaxation.json"}) {
        Scenario s = testing::load_fixture(name);
        s.econ.lambda = 0.0;
        const auto r = optimize_enumerate(resolve(s));
        ok = ok && r.best_path == InterventionPath::zeros(r.best_path.size());
        detail += std::string(detail.empty() ? "" : ", ") + name + " -> " + r.best_path.to_string();
    }
    return {ok, detail};
}

Outcome lambda_monotonicity() {
    const ResolvedScenario w = world("early_containment.json");
    std::vector<double> grid;
    for (int k = 0; k < 20; ++k) grid.push_back(std::pow(10.0, -2.0 + 5.0 * k / 19.0));
    const auto sweep = lambda_sweep(w, grid);
    bool ok = sweep.entries.size() == 20;
    for (std::size_t i = 1; i < sweep.entries.size(); ++i) {
        ok = ok && sweep.entries[i].tsl <= sweep.entries[i - 1].tsl && sweep.entries[i].el >= sweep.entries[i - 1].el;
    }
    return {ok, "lambda 0.01..1000: " + sweep.entries.front().best_path.to_string() + " -> " +
                    sweep.entries.back().best_path.to_string() + ", deaths " + num(sweep.entries.front().tsl) +
                    " -> " + num(sweep.entries.back().tsl)};
}

Outcome integrator_accuracy() {
    std::string detail;
    bool ok = true;
    for (const char* name : {"early_containment.json", "premature_relaxation.json"}) {
        const ResolvedScenario w = world(name);
        const auto zero = InterventionPath::zeros(w.n_phases());
        const auto stats = peak_stats(simulate(w.epidemic(), w.effects(), w.schedule, zero));
        const auto oracle = testing::euler_oracle(w.epidemic(), w.effects(), w.schedule, zero, 1e-3);
        const double dh = rel_diff(stats.peak_height, oracle.peak_height);
        const double dt = rel_diff(stats.peak_time, oracle.peak_time);
        const double da = rel_diff(stats.attack_rate, oracle.attack_rate);
        ok = ok && dh <= 5e-3 && dt <= 5e-3 && da <= 5e-3;
        detail += std::string(detail.empty() ? "" : "; ") + name + " height " + num(100 * dh) + "%, time " +
                  num(100 * dt) + "%, attack " + num(100 * da) + "%";
    }
    return {ok, detail};
}

Outcome debt_identities() {
    using namespace debt;
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int configs = 0;
    auto track = [&](double v) { worst = std::max(worst, std::abs(v)); };
    for (int k = 0; k < 500; ++k) {
        LedgerConfig c;
        c.periods = std::uniform_int_distribution<int>(2, 6)(rng);
        c.cohort_income = 20 + 200 * u(rng);
        c.gov_spending = c.cohort_income * u(rng);
        c.interest_rate = 0.15 * u(rng);
        c.marginal_product = 0.3 * u(rng);
        c.bondholder_share = u(rng);
        c.crowding_out_share = k % 2 == 0 ? 0.0 : u(rng);
        c.ricardian = k % 3 == 0;
        const auto cmp = compare_financing(c);
        const auto& tax = cmp.of(Financing::tax);
        const auto& internal = cmp.of(Financing::internal_debt);
        const auto& external = cmp.of(Financing::external_debt);
        for (const auto* l : {&tax, &internal, &external}) track(l->max_accounting_residual());

        // Transfer neutrality (kappa = 0) and Ricardian equivalence.
        if (c.crowding_out_share == 0.0 || c.ricardian) {
            for (std::size_t t = 0; t < tax.records.size(); ++t) {
                track(tax.records[t].aggregate_consumption - internal.records[t].aggregate_consumption);
                track(tax.records[t].output - internal.records[t].output);
                track(tax.records[t].investment - internal.records[t].investment);
                track(tax.records[t].payments_abroad - internal.records[t].payments_abroad);
            }
        }
        // External burden exactness.
        double shortfall = 0.0;
        double abroad = 0.0;
        for (std::size_t t = 1; t < tax.records.size(); ++t) {
            shortfall += tax.records[t].aggregate_consumption - external.records[t].aggregate_consumption;
            abroad += external.records[t].payments_abroad;
        }
        track(shortfall - abroad);
        track(abroad - c.gov_spending * (1 + c.interest_rate * (c.periods - 1)));
        // No-capital currentness.
        for (Financing f : kAllFinancing)
            track(wartime_no_capital_demo(c.gov_spending, c.cohort_income, f).period1_consumption_drop -
                  c.gov_spending);
        ++configs;
    }
    return {worst <= 1e-9, std::to_string(configs) + " configs x 3 modes, worst identity residual " + num(worst)};
}

Outcome two_percent_report() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "pandemic_acceptance_report";
    fs::remove_all(dir);
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli({"pandemic", "simulate", "--scenario", testing::fixture("early_containment.json"),
                              "--path", "2,2,2,2", "--out", dir.string()},
                             out, err);
    if (code != 0) return {false, "simulate exited " + std::to_string(code) + ": " + err.str()};
    std::ifstream in(dir / "report.json");
    const auto report = io::json::parse(in);
    const auto& e = report.at("economics");
    const double share = e.at("lockdown_gap_share").get<double>();
    const double annual = e.at("annualized_lockdown_loss").get<double>() / e.at("annual_peace_income").get<double>();
    const double horizon = e.at("el_share_of_horizon_income").get<double>();
    const std::string text = e.at("lockdown_gap_text").get<std::string>();
    const bool ok = std::abs(share - 0.02) <= 1e-12 && std::abs(annual - 0.02) <= 1e-12 &&
                    std::abs(horizon - 0.02) <= 1e-12 && text.find("2%") != std::string::npos &&
                    out.str().find("2% of peacetime income") != std::string::npos;
    return {ok, "report: \"" + text + "\", annualized share " + num(annual) + ", full-lockdown EL share " +
                    num(horizon)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"telescoping identity", telescoping},
        {"baseline single-peaked", single_peaked_baseline},
        {"early weak vs strong within 5%", early_weak_equals_strong},
        {"peak weak vs strong at least 30% apart", peak_weak_differs_from_strong},
        {"premature relaxation resurgence", premature_relaxation},
        {"example optimal paths", example_paths},
        {"DP equals enumeration", dp_equals_enumeration},
        {"lambda = 0 does nothing", lambda_zero_corner},
        {"lambda monotonicity", lambda_monotonicity},
        {"RK4 vs fine Euler", integrator_accuracy},
        {"debt ledger identities", debt_identities},
        {"2% lockdown report", two_percent_report},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
