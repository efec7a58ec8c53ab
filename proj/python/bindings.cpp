#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pandemic/cli.hpp"
#include "pandemic/debt.hpp"
#include "pandemic/error.hpp"
#include "pandemic/io.hpp"
#include "pandemic/loss.hpp"
#include "pandemic/optimizer.hpp"

namespace py = pybind11;
using namespace pandemic;
using io::json;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& obj) {
    return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

InterventionPath as_path(const std::vector<int>& v) { return InterventionPath(v); }

py::dict trajectory_dict(const Trajectory& t) {
    py::dict d;
    d["t"] = t.times;
    d["S"] = t.susceptible;
    d["I"] = t.infected;
    d["R"] = t.recovered;
    d["new_infections"] = t.new_infections;
    d["cumulative_infections"] = t.cumulative_infections;
    d["cumulative_deaths"] = t.cumulative_deaths;
    d["intensity"] = t.intensity_at;
    return d;
}

py::dict result_dict(const OptimizationResult& r) {
    py::dict d;
    d["method"] = to_string(r.method);
    d["best_path"] = r.best_path.intensities();
    d["best_loss"] = to_py(io::to_json(r.best_loss));
    py::list ranking;
    for (const auto& row : r.ranking) {
        py::dict e;
        e["path"] = row.path.intensities();
        e["loss"] = to_py(io::to_json(row.loss));
        ranking.append(e);
    }
    d["ranking"] = ranking;
    return d;
}

debt::LedgerConfig ledger_config(const py::object& obj) { return io::ledger_config_from_json(from_py(obj)); }

py::object ledger_records(const debt::GenerationalLedger& l) {
    std::ostringstream os;
    io::write_ledger_csv(os, l);
    std::istringstream is(os.str());
    const auto table = io::read_csv(is);
    py::list rows;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        py::dict row;
        for (const auto& name : table.header) row[py::str(name)] = table.number(r, name);
        rows.append(row);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Epidemic intervention loss model and generational debt ledger";
    m.attr("__version__") = io::kToolVersion;

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<IntegrationError>(m, "IntegrationError", base.ptr());
    py::register_exception<ScheduleError>(m, "ScheduleError", base.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());

    py::class_<ResolvedScenario>(m, "Scenario")
        .def_static("load", [](const std::string& path) { return resolve(io::load_scenario(path)); },
                    py::arg("path"))
        .def_static("from_json", [](const std::string& text) { return resolve(io::parse_scenario(text)); },
                    py::arg("text"))
        .def_static("from_dict", [](const py::object& d) { return resolve(io::scenario_from_json(from_py(d))); },
                    py::arg("data"))
        .def_property_readonly("name", [](const ResolvedScenario& w) { return w.scenario.name; })
        .def_property_readonly("n_phases", &ResolvedScenario::n_phases)
        .def_property_readonly("boundaries", [](const ResolvedScenario& w) { return w.schedule.boundaries; })
        .def_property_readonly("sha256", [](const ResolvedScenario& w) { return io::scenario_hash(w.scenario); })
        .def("to_dict", [](const ResolvedScenario& w) { return to_py(io::to_json(w.scenario)); })
        .def("with_lambda",
             [](const ResolvedScenario& w, double lambda) {
                 ResolvedScenario out = w;
                 out.scenario.econ.lambda = lambda;
                 out.scenario.validate();
                 return out;
             },
             py::arg("lambda_"))
        .def("__repr__", [](const ResolvedScenario& w) { return "<Scenario '" + w.scenario.name + "'>"; });

    m.def("simulate",
          [](const ResolvedScenario& w, const std::vector<int>& path) {
              return trajectory_dict(simulate(w.epidemic(), w.effects(), w.schedule, as_path(path)));
          },
          py::arg("scenario"), py::arg("path"));
    m.def("peak_stats",
          [](const ResolvedScenario& w, const std::vector<int>& path) {
              return to_py(io::to_json(peak_stats(simulate(w.epidemic(), w.effects(), w.schedule, as_path(path)))));
          },
          py::arg("scenario"), py::arg("path"));
    m.def("combined_loss",
          [](const ResolvedScenario& w, const std::vector<int>& path) {
              return to_py(io::to_json(combined_loss(w, as_path(path))));
          },
          py::arg("scenario"), py::arg("path"));
    m.def("economic_summary",
          [](const ResolvedScenario& w, const std::vector<int>& path) {
              const double el = economic_loss(w, as_path(path));
              return to_py(io::to_json(summarize_economics(w.econ(), el, w.epidemic().horizon_days)));
          },
          py::arg("scenario"), py::arg("path"));
    m.def("optimize",
          [](const ResolvedScenario& w, const std::string& method) {
              return result_dict(optimize(w, parse_method(method)));
          },
          py::arg("scenario"), py::arg("method") = "enum");
    m.def("deviation_check",
          [](const ResolvedScenario& w, const std::vector<int>& path) {
              py::list out;
              for (const auto& d : deviation_check(w, as_path(path))) {
                  py::dict e;
                  e["phase"] = d.phase + 1;
                  e["alt_intensity"] = d.alt_intensity;
                  e["delta_cpl"] = d.delta_cpl;
                  out.append(e);
              }
              return out;
          },
          py::arg("scenario"), py::arg("path"));
    m.def("lambda_sweep",
          [](const ResolvedScenario& w, const std::vector<double>& grid) {
              py::list out;
              for (const auto& e : lambda_sweep(w, grid).entries) {
                  py::dict row;
                  row["lambda"] = e.lambda;
                  row["path"] = e.best_path.intensities();
                  row["el"] = e.el;
                  row["tsl"] = e.tsl;
                  row["cpl"] = e.cpl;
                  out.append(row);
              }
              return out;
          },
          py::arg("scenario"), py::arg("grid"));
    m.def("frontier",
          [](const ResolvedScenario& w, double gamma_exp, std::size_t samples) {
              py::list out;
              for (const auto& p : frontier(w.econ(), w.effects(), gamma_exp, samples)) {
                  py::dict row;
                  row["intensity"] = p.intensity;
                  row["health_capital"] = p.health_capital;
                  row["income"] = p.income;
                  row["label"] = p.label;
                  out.append(row);
              }
              return out;
          },
          py::arg("scenario"), py::arg("gamma_exp") = 2.0, py::arg("samples") = 50);

    m.def("run_ledger", [](const py::object& config) { return ledger_records(debt::run_ledger(ledger_config(config))); },
          py::arg("config"));
    m.def("compare_financing",
          [](const py::object& config) {
              py::dict out;
              for (const auto& l : debt::compare_financing(ledger_config(config)).ledgers)
                  out[py::str(debt::to_string(l.config.financing))] = ledger_records(l);
              return out;
          },
          py::arg("config"));
    m.def("wartime_no_capital_demo",
          [](double gov_spending, double cohort_income, const std::string& financing) {
              const auto w = debt::wartime_no_capital_demo(gov_spending, cohort_income,
                                                           debt::parse_financing(financing));
              py::dict d;
              d["period1_consumption_drop"] = w.period1_consumption_drop;
              d["period1_consumption"] = w.period1_consumption;
              d["borne_by"] = w.borne_by;
              return d;
          },
          py::arg("gov_spending"), py::arg("cohort_income"), py::arg("financing"));

    m.def("run_cli",
          [](std::vector<std::string> args) {
              args.insert(args.begin(), "pandemic");
              std::ostringstream out;
              std::ostringstream err;
              const int code = run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Run a CLI command; returns (exit_code, stdout, stderr).");
}
