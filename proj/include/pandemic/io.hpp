#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pandemic/debt.hpp"
#include "pandemic/epidemic.hpp"
#include "pandemic/loss.hpp"
#include "pandemic/optimizer.hpp"
#include "pandemic/scenario.hpp"

namespace pandemic::io {

using nlohmann::json;

inline constexpr const char* kToolName = "pandemic";
inline constexpr const char* kToolVersion = "0.1.0";

// Scenario documents. Unknown fields are rejected at every level; omitted
// optional fields are filled in and echoed back by to_json.
Scenario load_scenario(const std::filesystem::path& file);
Scenario parse_scenario(std::string_view text, std::string_view origin = "<string>");
Scenario scenario_from_json(const json& doc);
json to_json(const Scenario& scenario);

// SHA-256 (hex) of the canonical serialization.
std::string scenario_hash(const Scenario& scenario);
std::string sha256_hex(std::string_view bytes);

debt::LedgerConfig load_ledger_config(const std::filesystem::path& file);
debt::LedgerConfig parse_ledger_config(std::string_view text, std::string_view origin = "<string>");
debt::LedgerConfig ledger_config_from_json(const json& doc);
json to_json(const debt::LedgerConfig& config);

json to_json(const LossBreakdown& loss);
json to_json(const PeakStats& stats);
json to_json(const EconomicSummary& summary);
json to_json(const PhaseSchedule& schedule);
json to_json(const debt::GenerationalLedger& ledger);

// 12 significant digits.
std::string format_number(double v);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const EconomicParams& econ,
                          const PhaseSchedule& schedule, const InterventionPath& path, int horizon_days);
void write_ranking_csv(std::ostream& os, const std::vector<RankedPath>& ranking);
void write_sweep_csv(std::ostream& os, const LambdaSweep& sweep);
void write_frontier_csv(std::ostream& os, const std::vector<FrontierPoint>& points);
void write_ledger_csv(std::ostream& os, const debt::GenerationalLedger& ledger);
void write_comparison_csv(std::ostream& os, const debt::FinancingComparison& comparison);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;
    double number(std::size_t row, std::string_view name) const;
};

// Plain comma-separated reader for the files written above (no quoting).
CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::filesystem::path& file);

}  // namespace pandemic::io
