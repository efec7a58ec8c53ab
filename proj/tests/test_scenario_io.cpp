#include <doctest.h>

#include <fstream>
#include <sstream>

#include "pandemic/error.hpp"
#include "pandemic/io.hpp"
#include "pandemic/optimizer.hpp"
#include "support/support.hpp"

using namespace pandemic;
using io::json;

namespace {

json fixture_json(const std::string& name) {
    std::ifstream in(testing::fixture(name));
    return json::parse(in);
}

std::string message_of(const json& doc) {
    try {
        io::scenario_from_json(doc);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("shipped fixtures load") {
    for (const char* name : {"early_containment.json", "late_response.json", "premature_relaxation.json"}) {
        CAPTURE(name);
        const Scenario s = testing::load_fixture(name);
        CHECK(s.n_phases() == 4);
        CHECK(resolve(s).n_phases() == 4);
    }
    const Scenario late = testing::load_fixture("late_response.json");
    REQUIRE(late.forced_intensities.size() == 4);
    CHECK(late.forced_intensities[0] == 0);
    CHECK(!late.forced_intensities[1]);
}

TEST_CASE("defaults are applied and echoed") {
    json doc = fixture_json("early_containment.json");
    doc.erase("version");
    doc["epidemic"].erase("step_days");
    doc["epidemic"].erase("import_rate");
    doc["econ"].erase("escalation_rate");
    doc.erase("schedule");
    const Scenario s = io::scenario_from_json(doc);
    CHECK(s.version == "1");
    CHECK(s.epidemic.step_days == 0.25);
    CHECK(s.epidemic.import_rate == 0.0);
    CHECK(s.econ.escalation_rate == 0.0);
    CHECK(std::get<Milestones>(s.schedule) == Milestones{});

    const json echoed = io::to_json(s);
    CHECK(echoed["version"] == "1");
    CHECK(echoed["epidemic"]["step_days"] == 0.25);
    CHECK(echoed["epidemic"]["import_rate"] == 0.0);
    CHECK(echoed["econ"]["escalation_rate"] == 0.0);
    CHECK(echoed["schedule"]["milestones"]["spread_threshold"] == 1e-3);
    CHECK(echoed["forced_intensities"].is_array());
}

TEST_CASE("round trip: load, serialize, load") {
    for (const char* name : {"early_containment.json", "late_response.json", "premature_relaxation.json"}) {
        CAPTURE(name);
        const Scenario a = testing::load_fixture(name);
        const Scenario b = io::parse_scenario(io::to_json(a).dump());
        CHECK(io::to_json(a) == io::to_json(b));
        CHECK(a.name == b.name);
        CHECK(a.epidemic.beta0 == b.epidemic.beta0);
        CHECK(a.effects.contact_cut == b.effects.contact_cut);
        CHECK(a.schedule == b.schedule);
        CHECK(a.econ == b.econ);
        CHECK(a.forced_intensities == b.forced_intensities);
        CHECK(io::scenario_hash(a) == io::scenario_hash(b));
    }
}

TEST_CASE("property: random scenarios round-trip exactly") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const Scenario a = testing::random_scenario(rng, 5);
        const Scenario b = io::parse_scenario(io::to_json(a).dump());
        CHECK(io::to_json(a) == io::to_json(b));
        CHECK(a.epidemic.population == b.epidemic.population);
        CHECK(a.epidemic.ifr == b.epidemic.ifr);
        CHECK(a.econ == b.econ);
        CHECK(a.schedule == b.schedule);
    }
}

TEST_CASE("invalid values name the field") {
    json doc = fixture_json("early_containment.json");
    doc["epidemic"]["ifr"] = 1.5;
    CHECK(message_of(doc).find("ifr") != std::string::npos);

    doc = fixture_json("early_containment.json");
    doc["name"] = "";
    CHECK(message_of(doc).find("name") != std::string::npos);

    doc = fixture_json("early_containment.json");
    doc["econ"]["y_min"] = 2000;
    CHECK(message_of(doc).find("econ") != std::string::npos);

    doc = fixture_json("early_containment.json");
    doc["epidemic"]["beta0"] = "fast";
    CHECK(message_of(doc).find("epidemic.beta0") != std::string::npos);

    doc = fixture_json("early_containment.json");
    doc["epidemic"].erase("gamma");
    CHECK(message_of(doc).find("epidemic.gamma") != std::string::npos);

    doc = fixture_json("early_containment.json");
    doc["forced_intensities"] = {0, nullptr};
    CHECK(message_of(doc).find("forced_intensities") != std::string::npos);
}

TEST_CASE("unknown fields are rejected at every level") {
    json doc = fixture_json("early_containment.json");
    doc["colour"] = "blue";
    CHECK(message_of(doc).find("colour") != std::string::npos);

    doc = fixture_json("early_containment.json");
    doc["epidemic"]["r0"] = 2.1;
    CHECK(message_of(doc).find("epidemic.r0") != std::string::npos);

    doc = fixture_json("early_containment.json");
    doc["schedule"]["milestones"]["peak"] = 1;
    CHECK(message_of(doc).find("schedule.milestones.peak") != std::string::npos);

    doc = fixture_json("early_containment.json");
    doc["econ"]["lambda_"] = 1;
    CHECK(message_of(doc).find("econ.lambda_") != std::string::npos);
}

TEST_CASE("parse errors report line and column") {
    const std::string text = "{\n  \"name\": \"x\",\n  \"epidemic\": {,\n}";
    try {
        io::parse_scenario(text, "broken.json");
        FAIL("expected a parse error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("broken.json:3:") != std::string::npos);
    }
    CHECK_THROWS_AS(io::load_scenario("/nonexistent/scenario.json"), ValidationError);
}

TEST_CASE("ledger configs load with defaults and strictness") {
    const auto c = io::load_ledger_config(testing::fixture("debt/internal_crowding.json"));
    CHECK(c.financing == debt::Financing::internal_debt);
    CHECK(c.periods == 3);
    const auto w = io::load_ledger_config(testing::fixture("debt/wartime.json"));
    CHECK(w.interest_rate == 0.0);
    CHECK(w.bondholder_share == 0.5);
    CHECK(!w.ricardian);
    CHECK(io::ledger_config_from_json(io::to_json(c)) == c);
    CHECK_THROWS_WITH_AS(io::parse_ledger_config(R"({"periods":2,"cohort_income":1,"gov_spending":0,"financing":"tax","x":1})"),
                         doctest::Contains("x"), ValidationError);
    CHECK_THROWS_AS(io::parse_ledger_config(R"({"periods":2,"cohort_income":1,"gov_spending":0,"financing":"gold"})"),
                    ValidationError);
}

TEST_CASE("sha256 of a known string") {
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("numbers print with 12 significant digits") {
    CHECK(io::format_number(1.0) == "1");
    CHECK(io::format_number(1576.5756632508067) == "1576.57566325");
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(1e-20) == "1e-20");
}

TEST_CASE("trajectory CSV parses back to the series") {
    const ResolvedScenario w = resolve(testing::load_fixture("premature_relaxation.json"));
    const auto path = InterventionPath({0, 2, 1, 0});
    const auto traj = simulate(w.epidemic(), w.effects(), w.schedule, path);
    std::stringstream ss;
    io::write_trajectory_csv(ss, traj, w.econ(), w.schedule, path, w.epidemic().horizon_days);
    const auto table = io::read_csv(ss);
    CHECK(table.header == std::vector<std::string>{"t", "S", "I", "R", "new_infections", "cumulative_deaths",
                                                    "intensity", "daily_income"});
    REQUIRE(table.rows.size() == traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(table.number(i, "t") == std::stod(io::format_number(traj.times[i])));
        CHECK(testing::rel_diff(table.number(i, "S"), traj.susceptible[i]) <= 5e-12);
        CHECK(testing::rel_diff(table.number(i, "I"), traj.infected[i]) <= 5e-12);
        CHECK(testing::rel_diff(table.number(i, "new_infections"), traj.new_infections[i]) <= 5e-12);
        CHECK(testing::rel_diff(table.number(i, "cumulative_deaths"), traj.cumulative_deaths[i]) <= 5e-12);
        CHECK(table.number(i, "intensity") == traj.intensity_at[i]);
        // Reprinting the parsed value reproduces the file exactly.
        CHECK(io::format_number(table.number(i, "I")) == table.rows[i][table.column("I")]);
    }
}

TEST_CASE("ranking CSV lets the combined loss be recomputed by hand") {
    const auto result = optimize_enumerate(resolve(testing::load_fixture("early_containment.json")));
    std::stringstream ss;
    io::write_ranking_csv(ss, result.ranking);
    const auto table = io::read_csv(ss);
    CHECK(table.header == std::vector<std::string>{"path", "msl", "tsl", "sg1", "sg2", "sg3", "sg4", "el", "cpl"});
    REQUIRE(table.rows.size() == 81);
    CHECK(table.rows[0][0] == "1-1-0-0");
    double previous = -1.0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const double recomputed = table.number(i, "el") + 1.8 * table.number(i, "tsl");
        CHECK(testing::rel_diff(recomputed, table.number(i, "cpl")) <= 1e-11);
        CHECK(recomputed >= previous * (1 - 1e-11));
        previous = recomputed;
        const double sg = table.number(i, "sg1") + table.number(i, "sg2") + table.number(i, "sg3") +
                          table.number(i, "sg4");
        CHECK(std::abs(table.number(i, "msl") - sg - table.number(i, "tsl")) <= 1e-9 * table.number(i, "msl"));
    }
}
