#include "pandemic/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pandemic/debt.hpp"
#include "pandemic/error.hpp"
#include "pandemic/io.hpp"
#include "pandemic/loss.hpp"
#include "pandemic/optimizer.hpp"
#include "pandemic/scenario.hpp"

namespace pandemic {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Options {
    std::string scenario;
    std::string config;
    std::string out = "out";
    std::uint64_t seed = 0;
    std::string path;
    std::string method = "enum";
    std::vector<double> lambdas;
    double gamma_exp = 2.0;
    std::size_t samples = 50;
    bool compare = false;
};

std::string percent(double share) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g%%", share * 100.0);
    return buf;
}

class Run {
public:
    Run(std::string command, const Options& opt, const std::vector<std::string>& args, std::ostream& out)
        : opt_(opt), out_(out) {
        manifest_["tool"] = io::kToolName;
        manifest_["version"] = io::kToolVersion;
        manifest_["command"] = std::move(command);
        manifest_["argv"] = json(std::vector<std::string>(args.begin() + 1, args.end()));
        manifest_["seed"] = opt.seed;
        manifest_["outputs"] = json::array();
    }

    ResolvedScenario load_scenario() {
        const Scenario s = io::load_scenario(opt_.scenario);
        manifest_["scenario"] = {{"name", s.name},
                                 {"version", s.version},
                                 {"file", opt_.scenario},
                                 {"sha256", io::scenario_hash(s)}};
        return resolve(s);
    }

    json& manifest() { return manifest_; }

    template <class Writer>
    void write(const std::string& name, Writer&& writer) {
        fs::create_directories(opt_.out);
        const fs::path file = fs::path(opt_.out) / name;
        std::ofstream os(file);
        if (!os) throw Error("cannot write '" + file.string() + "'");
        writer(os);
        if (!os) throw Error("write failed for '" + file.string() + "'");
        manifest_["outputs"].push_back(name);
    }

    void write_json(const std::string& name, const json& doc) {
        write(name, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    }

    void finish() {
        const json doc = manifest_;
        fs::create_directories(opt_.out);
        std::ofstream os(fs::path(opt_.out) / "manifest.json");
        if (!os) throw Error("cannot write manifest under '" + opt_.out + "'");
        os << doc.dump(2) << '\n';
        out_ << "wrote " << (fs::path(opt_.out) / "manifest.json").string() << '\n';
    }

private:
    const Options& opt_;
    std::ostream& out_;
    json manifest_;
};

json economics_block(const EconomicParams& econ, double el, int horizon) {
    json e = io::to_json(summarize_economics(econ, el, horizon));
    const EconomicSummary s = summarize_economics(econ, el, horizon);
    e["lockdown_gap_text"] = "a lockdown costs " + percent(s.lockdown_gap_share) + " of peacetime income";
    return e;
}

void print_economics(std::ostream& out, const EconomicParams& econ, double el, int horizon) {
    const EconomicSummary s = summarize_economics(econ, el, horizon);
    out << "lockdown income gap: " << percent(s.lockdown_gap_share) << " of peacetime income ("
        << io::format_number(s.annualized_lockdown_loss) << " of " << io::format_number(s.annual_peace_income)
        << " per year)\n";
    out << "economic loss over the horizon: " << percent(s.el_share_of_horizon_income) << " of peacetime income\n";
}

int cmd_simulate(const Options& opt, const std::vector<std::string>& args, std::ostream& out) {
    Run run("simulate", opt, args, out);
    const ResolvedScenario world = run.load_scenario();
    const InterventionPath path = InterventionPath::parse(opt.path);
    path.validate(world.n_phases(), world.alphabet_size());
    if (!world.admissible(path)) throw ValidationError("path: " + path.to_string() + " violates forced_intensities");

    const Trajectory traj = simulate(world.epidemic(), world.effects(), world.schedule, path);
    const LossBreakdown loss = combined_loss(world, path);
    const PeakStats peaks = peak_stats(traj);
    const int horizon = world.epidemic().horizon_days;

    run.write("trajectory.csv", [&](std::ostream& os) {
        io::write_trajectory_csv(os, traj, world.econ(), world.schedule, path, horizon);
    });
    run.write_json("report.json", {{"path", path.to_string()},
                                   {"schedule", io::to_json(world.schedule)},
                                   {"loss", io::to_json(loss)},
                                   {"peaks", io::to_json(peaks)},
                                   {"economics", economics_block(world.econ(), loss.el, horizon)}});
    run.manifest()["path"] = path.to_string();
    run.finish();

    out << "path " << path.to_string() << ": deaths " << io::format_number(loss.tsl) << ", el "
        << io::format_number(loss.el) << ", cpl " << io::format_number(loss.cpl) << '\n';
    print_economics(out, world.econ(), loss.el, horizon);
    return kExitOk;
}

int cmd_optimize(const Options& opt, const std::vector<std::string>& args, std::ostream& out) {
    Run run("optimize", opt, args, out);
    const ResolvedScenario world = run.load_scenario();
    const Method method = parse_method(opt.method);
    const OptimizationResult result = optimize(world, method);
    const std::vector<Deviation> deviations = deviation_check(world, result.best_path);

    json devs = json::array();
    bool certified = true;
    for (const auto& d : deviations) {
        devs.push_back({{"phase", d.phase + 1}, {"alt_intensity", d.alt_intensity}, {"delta_cpl", d.delta_cpl}});
        certified = certified && d.delta_cpl >= 0.0;
    }
    const int horizon = world.epidemic().horizon_days;

    run.write("ranking.csv", [&](std::ostream& os) { io::write_ranking_csv(os, result.ranking); });
    run.write_json("report.json", {{"method", to_string(result.method)},
                                   {"best_path", result.best_path.to_string()},
                                   {"best_loss", io::to_json(result.best_loss)},
                                   {"paths_ranked", result.ranking.size()},
                                   {"schedule", io::to_json(world.schedule)},
                                   {"deviations", devs},
                                   {"locally_optimal", certified},
                                   {"economics", economics_block(world.econ(), result.best_loss.el, horizon)}});
    run.manifest()["method"] = to_string(result.method);
    run.manifest()["path"] = result.best_path.to_string();
    run.finish();

    out << "best path (" << to_string(result.method) << "): " << result.best_path.to_string() << ", cpl "
        << io::format_number(result.best_loss.cpl) << ", deaths " << io::format_number(result.best_loss.tsl)
        << ", el " << io::format_number(result.best_loss.el) << '\n';
    print_economics(out, world.econ(), result.best_loss.el, horizon);
    return kExitOk;
}

int cmd_sweep(const Options& opt, const std::vector<std::string>& args, std::ostream& out) {
    Run run("sweep", opt, args, out);
    const ResolvedScenario world = run.load_scenario();
    const LambdaSweep sweep = lambda_sweep(world, opt.lambdas);
    run.write("sweep.csv", [&](std::ostream& os) { io::write_sweep_csv(os, sweep); });
    run.manifest()["method"] = "enum";
    run.manifest()["lambdas"] = sweep.lambda_grid;
    run.finish();
    for (const auto& e : sweep.entries) {
        out << "lambda " << io::format_number(e.lambda) << ": " << e.best_path.to_string() << '\n';
    }
    return kExitOk;
}

int cmd_frontier(const Options& opt, const std::vector<std::string>& args, std::ostream& out) {
    Run run("frontier", opt, args, out);
    const ResolvedScenario world = run.load_scenario();
    const auto points = frontier(world.econ(), world.effects(), opt.gamma_exp, opt.samples);
    run.write("frontier.csv", [&](std::ostream& os) { io::write_frontier_csv(os, points); });
    run.manifest()["gamma_exp"] = opt.gamma_exp;
    run.manifest()["samples"] = opt.samples;
    run.finish();
    out << points.size() << " frontier points\n";
    return kExitOk;
}

int cmd_debt(const Options& opt, const std::vector<std::string>& args, std::ostream& out) {
    Run run("debt", opt, args, out);
    const debt::LedgerConfig config = io::load_ledger_config(opt.config);
    run.manifest()["config"] = {{"file", opt.config}, {"sha256", io::sha256_hex(io::to_json(config).dump())}};

    const debt::GenerationalLedger ledger = debt::run_ledger(config);
    run.write("ledger.csv", [&](std::ostream& os) { io::write_ledger_csv(os, ledger); });
    json report = {{"ledger", io::to_json(ledger)}, {"max_accounting_residual", ledger.max_accounting_residual()}};

    if (opt.compare) {
        const debt::FinancingComparison cmp = debt::compare_financing(config);
        run.write("comparison.csv", [&](std::ostream& os) { io::write_comparison_csv(os, cmp); });
        json wartime = json::object();
        for (debt::Financing f : debt::kAllFinancing) {
            const auto w = debt::wartime_no_capital_demo(config.gov_spending, config.cohort_income, f);
            wartime[debt::to_string(f)] = {{"period1_consumption_drop", w.period1_consumption_drop},
                                           {"borne_by", w.borne_by}};
        }
        report["wartime_no_capital"] = wartime;
    }
    run.write_json("report.json", report);
    run.finish();

    out << "financing " << debt::to_string(config.financing) << ": debt " << io::format_number(ledger.debt)
        << ", final-period consumption " << io::format_number(ledger.records.back().aggregate_consumption) << '\n';
    return kExitOk;
}

int cmd_validate(const Options& opt, std::ostream& out) {
    const Scenario s = io::load_scenario(opt.scenario);
    const ResolvedScenario world = resolve(s);
    out << "scenario '" << s.name << "' is valid\n";
    out << "phases: " << world.n_phases() << ", intensities: " << world.alphabet_size() << '\n';
    out << "boundaries:";
    for (double b : world.schedule.boundaries) out << ' ' << io::format_number(b);
    out << "\nsha256: " << io::scenario_hash(s) << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Epidemic intervention loss model and generational debt ledger", "pandemic"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::kToolVersion));

    auto common = [&](CLI::App* sub, bool scenario) {
        if (scenario) sub->add_option("--scenario", opt.scenario, "Scenario JSON file")->required();
        sub->add_option("--seed", opt.seed, "Recorded in the manifest; results do not depend on it");
    };
    auto output = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
    };

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Simulate one intervention path");
    common(simulate_cmd, true);
    output(simulate_cmd);
    simulate_cmd->add_option("--path", opt.path, "Intensities per phase, e.g. 0,2,1,0")->required();

    CLI::App* optimize_cmd = app.add_subcommand("optimize", "Find the path with the lowest combined loss");
    common(optimize_cmd, true);
    output(optimize_cmd);
    optimize_cmd->add_option("--method", opt.method, "enum or dp")
        ->check(CLI::IsMember({"enum", "dp"}))
        ->capture_default_str();

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Optimal path over a grid of lambda values");
    common(sweep_cmd, true);
    output(sweep_cmd);
    sweep_cmd->add_option("--lambdas", opt.lambdas, "Ascending values, e.g. 0,1,10")->delimiter(',')->required();

    CLI::App* frontier_cmd = app.add_subcommand("frontier", "Income versus health-capital trade-off");
    common(frontier_cmd, true);
    output(frontier_cmd);
    frontier_cmd->add_option("--gamma-exp", opt.gamma_exp, "Curvature, must exceed 1")->capture_default_str();
    frontier_cmd->add_option("--samples", opt.samples, "Grid points")->capture_default_str();

    CLI::App* debt_cmd = app.add_subcommand("debt", "Generational ledger for one financing mode");
    common(debt_cmd, false);
    output(debt_cmd);
    debt_cmd->add_option("--config", opt.config, "Ledger config JSON file")->required();
    debt_cmd->add_flag("--compare", opt.compare, "Also tabulate all financing modes");

    CLI::App* validate_cmd = app.add_subcommand("validate", "Load and check a scenario");
    common(validate_cmd, true);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("pandemic");

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << io::kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << failing->help();
        return kExitValidation;
    }

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(opt, args, out);
        if (optimize_cmd->parsed()) return cmd_optimize(opt, args, out);
        if (sweep_cmd->parsed()) return cmd_sweep(opt, args, out);
        if (frontier_cmd->parsed()) return cmd_frontier(opt, args, out);
        if (debt_cmd->parsed()) return cmd_debt(opt, args, out);
        if (validate_cmd->parsed()) return cmd_validate(opt, out);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ScheduleError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << app.help();
    return kExitValidation;
}

int run_cli(int argc, char** argv) {
    return run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace pandemic
