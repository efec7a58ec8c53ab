#include "pandemic/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "pandemic/economics.hpp"
#include "pandemic/error.hpp"

namespace pandemic::io {

namespace {

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + file.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(std::string_view text, std::string_view origin) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line/column.
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ValidationError(std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                              ": JSON parse error: " + e.what());
    }
}

// Reads one JSON object field by field and rejects whatever is left over.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string context) : obj_(obj), ctx_(std::move(context)) {
        if (!obj_.is_object()) throw ValidationError(where() + "must be a JSON object");
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) throw ValidationError(field(key) + ": required field missing");
        return obj_.at(key);
    }

    double number(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number()) throw ValidationError(field(key) + ": must be a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : mark(key, fallback); }

    int integer(const std::string& key) {
        const json& v = raw(key);
        if (v.is_number_integer()) return v.get<int>();
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (d == std::floor(d) && std::abs(d) < 1e9) return static_cast<int>(d);
        }
        throw ValidationError(field(key) + ": must be an integer");
    }

    std::string string(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_string()) throw ValidationError(field(key) + ": must be a string");
        return v.get<std::string>();
    }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key)) return mark(key, fallback);
        const json& v = raw(key);
        if (!v.is_boolean()) throw ValidationError(field(key) + ": must be true or false");
        return v.get<bool>();
    }

    std::vector<double> numbers(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) throw ValidationError(field(key) + ": must be an array of numbers");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) throw ValidationError(field(key) + ": must be an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

    void finish() const {
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.count(key)) throw ValidationError(field(key) + ": unknown field");
        }
    }

    std::string field(const std::string& key) const { return ctx_.empty() ? key : ctx_ + "." + key; }

private:
    template <class T>
    T mark(const std::string& key, T value) {
        seen_.insert(key);
        return value;
    }
    std::string where() const { return ctx_.empty() ? "document " : ctx_ + ": "; }

    const json& obj_;
    std::string ctx_;
    std::set<std::string> seen_;
};

std::string path_cell(const InterventionPath& p) { return p.to_string('-'); }

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Scenario scenario_from_json(const json& doc) {
    ObjectReader top(doc, "");
    Scenario s;
    s.name = top.string("name");
    s.version = top.has("version") ? top.string("version") : "1";

    {
        ObjectReader e(top.raw("epidemic"), "epidemic");
        s.epidemic.population = e.number("population");
        s.epidemic.initial_infected = e.number_or("initial_infected", 0.0);
        s.epidemic.beta0 = e.number("beta0");
        s.epidemic.gamma = e.number("gamma");
        s.epidemic.ifr = e.number("ifr");
        s.epidemic.import_rate = e.number_or("import_rate", 0.0);
        s.epidemic.horizon_days = e.integer("horizon_days");
        s.epidemic.step_days = e.number_or("step_days", 0.25);
        e.finish();
    }
    {
        ObjectReader f(top.raw("effects"), "effects");
        s.effects.contact_cut = f.numbers("contact_cut");
        s.effects.import_cut = f.numbers("import_cut");
        f.finish();
    }
    if (top.has("schedule")) {
        ObjectReader sch(top.raw("schedule"), "schedule");
        if (sch.has("boundaries") && sch.has("milestones"))
            throw ValidationError("schedule: give either boundaries or milestones, not both");
        if (sch.has("boundaries")) {
            s.schedule = PhaseSchedule{sch.numbers("boundaries")};
        } else if (sch.has("milestones")) {
            ObjectReader m(sch.raw("milestones"), "schedule.milestones");
            Milestones ms;
            ms.spread_threshold = m.number_or("spread_threshold", ms.spread_threshold);
            ms.tail_threshold = m.number_or("tail_threshold", ms.tail_threshold);
            m.finish();
            s.schedule = ms;
        } else {
            throw ValidationError("schedule: expected 'boundaries' or 'milestones'");
        }
        sch.finish();
    } else {
        s.schedule = Milestones{};
    }
    {
        ObjectReader c(top.raw("econ"), "econ");
        s.econ.y_peace = c.number("y_peace");
        s.econ.y_moral = c.number("y_moral");
        s.econ.y_min = c.number("y_min");
        s.econ.escalation_rate = c.number_or("escalation_rate", 0.0);
        s.econ.lambda = c.number("lambda");
        c.finish();
    }
    if (top.has("forced_intensities")) {
        const json& f = top.raw("forced_intensities");
        if (!f.is_array()) throw ValidationError("forced_intensities: must be an array of integers or nulls");
        for (const auto& x : f) {
            if (x.is_null()) {
                s.forced_intensities.emplace_back(std::nullopt);
            } else if (x.is_number_integer()) {
                s.forced_intensities.emplace_back(x.get<int>());
            } else {
                throw ValidationError("forced_intensities: must be an array of integers or nulls");
            }
        }
    }
    top.finish();
    s.validate();
    return s;
}

Scenario parse_scenario(std::string_view text, std::string_view origin) {
    return scenario_from_json(parse_json(text, origin));
}

Scenario load_scenario(const std::filesystem::path& file) {
    const std::string text = read_file(file);
    try {
        return parse_scenario(text, file.string());
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.rfind(file.string(), 0) == 0) throw;
        throw ValidationError(file.string() + ": " + msg);
    }
}

json to_json(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["version"] = s.version;
    doc["epidemic"] = {{"population", s.epidemic.population},
                       {"initial_infected", s.epidemic.initial_infected},
                       {"beta0", s.epidemic.beta0},
                       {"gamma", s.epidemic.gamma},
                       {"ifr", s.epidemic.ifr},
                       {"import_rate", s.epidemic.import_rate},
                       {"horizon_days", s.epidemic.horizon_days},
                       {"step_days", s.epidemic.step_days}};
    doc["effects"] = {{"contact_cut", s.effects.contact_cut}, {"import_cut", s.effects.import_cut}};
    if (const auto* sch = std::get_if<PhaseSchedule>(&s.schedule)) {
        doc["schedule"] = {{"boundaries", sch->boundaries}};
    } else {
        const auto& m = std::get<Milestones>(s.schedule);
        doc["schedule"] = {
            {"milestones", {{"spread_threshold", m.spread_threshold}, {"tail_threshold", m.tail_threshold}}}};
    }
    doc["econ"] = {{"y_peace", s.econ.y_peace},
                   {"y_moral", s.econ.y_moral},
                   {"y_min", s.econ.y_min},
                   {"escalation_rate", s.econ.escalation_rate},
                   {"lambda", s.econ.lambda}};
    json forced = json::array();
    for (const auto& f : s.forced_intensities) forced.push_back(f ? json(*f) : json(nullptr));
    doc["forced_intensities"] = forced;
    return doc;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

std::string scenario_hash(const Scenario& scenario) { return sha256_hex(to_json(scenario).dump()); }

debt::LedgerConfig ledger_config_from_json(const json& doc) {
    ObjectReader r(doc, "");
    debt::LedgerConfig c;
    c.periods = r.integer("periods");
    c.cohort_income = r.number("cohort_income");
    c.gov_spending = r.number("gov_spending");
    c.financing = debt::parse_financing(r.string("financing"));
    c.interest_rate = r.number_or("interest_rate", 0.0);
    c.crowding_out_share = r.number_or("crowding_out_share", 0.0);
    c.marginal_product = r.number_or("marginal_product", 0.0);
    c.ricardian = r.boolean_or("ricardian", false);
    c.bondholder_share = r.number_or("bondholder_share", 0.5);
    r.finish();
    c.validate();
    return c;
}

debt::LedgerConfig parse_ledger_config(std::string_view text, std::string_view origin) {
    return ledger_config_from_json(parse_json(text, origin));
}

debt::LedgerConfig load_ledger_config(const std::filesystem::path& file) {
    return parse_ledger_config(read_file(file), file.string());
}

json to_json(const debt::LedgerConfig& c) {
    return {{"periods", c.periods},
            {"cohort_income", c.cohort_income},
            {"gov_spending", c.gov_spending},
            {"financing", debt::to_string(c.financing)},
            {"interest_rate", c.interest_rate},
            {"crowding_out_share", c.crowding_out_share},
            {"marginal_product", c.marginal_product},
            {"ricardian", c.ricardian},
            {"bondholder_share", c.bondholder_share}};
}

json to_json(const LossBreakdown& l) {
    return {{"msl", l.msl}, {"sl", l.sl},   {"tsl", l.tsl},      {"sg_per_phase", l.sg_per_phase},
            {"el", l.el},   {"cpl", l.cpl}, {"lambda", l.lambda}};
}

json to_json(const PeakStats& p) {
    return {{"peak_time", p.peak_time},
            {"peak_height", p.peak_height},
            {"second_peak_height", p.second_peak_height},
            {"attack_rate", p.attack_rate},
            {"total_deaths", p.total_deaths},
            {"local_maxima", p.local_maxima}};
}

json to_json(const EconomicSummary& e) {
    return {{"lockdown_gap_per_day", e.lockdown_gap_per_day},
            {"lockdown_gap_share", e.lockdown_gap_share},
            {"annual_peace_income", e.annual_peace_income},
            {"annualized_lockdown_loss", e.annualized_lockdown_loss},
            {"el_share_of_horizon_income", e.el_share_of_horizon_income}};
}

json to_json(const PhaseSchedule& s) { return {{"boundaries", s.boundaries}, {"n_phases", s.n_phases()}}; }

json to_json(const debt::GenerationalLedger& ledger) {
    json rows = json::array();
    for (const auto& r : ledger.records) {
        rows.push_back({{"period", r.period},
                        {"output", r.output},
                        {"taxes", r.taxes},
                        {"debt_service", r.debt_service},
                        {"transfers_to_domestic_bondholders", r.transfers_to_domestic_bondholders},
                        {"payments_abroad", r.payments_abroad},
                        {"investment", r.investment},
                        {"aggregate_consumption", r.aggregate_consumption}});
    }
    return {{"config", to_json(ledger.config)}, {"debt", ledger.debt}, {"records", rows}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const EconomicParams& econ,
                          const PhaseSchedule& schedule, const InterventionPath& path, int horizon_days) {
    const std::vector<double> income = daily_income(econ, daily_intensities(schedule, path, horizon_days));
    os << "t,S,I,R,new_infections,cumulative_deaths,intensity,daily_income\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto day = std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, std::floor(traj.times[i]))),
                                               income.empty() ? 0 : income.size() - 1);
        os << format_number(traj.times[i]) << ',' << format_number(traj.susceptible[i]) << ','
           << format_number(traj.infected[i]) << ',' << format_number(traj.recovered[i]) << ','
           << format_number(traj.new_infections[i]) << ',' << format_number(traj.cumulative_deaths[i]) << ','
           << traj.intensity_at[i] << ',' << (income.empty() ? std::string("0") : format_number(income[day]))
           << '\n';
    }
}

void write_ranking_csv(std::ostream& os, const std::vector<RankedPath>& ranking) {
    const std::size_t n = ranking.empty() ? 0 : ranking.front().path.size();
    os << "path,msl,tsl";
    for (std::size_t p = 0; p < n; ++p) os << ",sg" << p + 1;
    os << ",el,cpl\n";
    for (const auto& r : ranking) {
        os << path_cell(r.path) << ',' << format_number(r.loss.msl) << ',' << format_number(r.loss.tsl);
        for (double sg : r.loss.sg_per_phase) os << ',' << format_number(sg);
        os << ',' << format_number(r.loss.el) << ',' << format_number(r.loss.cpl) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const LambdaSweep& sweep) {
    os << "lambda,path,el,tsl,cpl\n";
    for (const auto& e : sweep.entries) {
        os << format_number(e.lambda) << ',' << path_cell(e.best_path) << ',' << format_number(e.el) << ','
           << format_number(e.tsl) << ',' << format_number(e.cpl) << '\n';
    }
}

void write_frontier_csv(std::ostream& os, const std::vector<FrontierPoint>& points) {
    os << "intensity,health_capital,income,label\n";
    for (const auto& p : points) {
        os << format_number(p.intensity) << ',' << format_number(p.health_capital) << ','
           << format_number(p.income) << ',' << p.label << '\n';
    }
}

void write_ledger_csv(std::ostream& os, const debt::GenerationalLedger& ledger) {
    os << "period,output,gov_spending,taxes,bond_sales,bond_purchases,foreign_inflow,debt_service,"
          "transfers_to_domestic_bondholders,payments_abroad,investment,aggregate_consumption,"
          "holder_consumption,nonholder_consumption\n";
    for (const auto& r : ledger.records) {
        os << r.period;
        for (double v : {r.output, r.gov_spending, r.taxes, r.bond_sales, r.bond_purchases, r.foreign_inflow,
                         r.debt_service, r.transfers_to_domestic_bondholders, r.payments_abroad, r.investment,
                         r.aggregate_consumption, r.holder_consumption, r.nonholder_consumption})
            os << ',' << format_number(v);
        os << '\n';
    }
}

void write_comparison_csv(std::ostream& os, const debt::FinancingComparison& comparison) {
    os << "period";
    for (const auto& l : comparison.ledgers) {
        const std::string m = debt::to_string(l.config.financing);
        os << ",consumption_" << m << ",holders_" << m << ",nonholders_" << m;
    }
    os << '\n';
    const std::size_t periods = comparison.ledgers.empty() ? 0 : comparison.ledgers.front().records.size();
    for (std::size_t t = 0; t < periods; ++t) {
        os << t + 1;
        for (const auto& l : comparison.ledgers) {
            const auto& r = l.records[t];
            os << ',' << format_number(r.aggregate_consumption) << ',' << format_number(r.holder_consumption) << ','
               << format_number(r.nonholder_consumption);
        }
        os << '\n';
    }
}

std::size_t CsvTable::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("csv: no column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, std::string_view name) const {
    return std::stod(rows.at(row).at(column(name)));
}

CsvTable read_csv(std::istream& is) {
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };
    CsvTable t;
    std::string line;
    if (std::getline(is, line)) t.header = split(line);
    while (std::getline(is, line)) {
        if (!line.empty()) t.rows.push_back(split(line));
    }
    return t;
}

CsvTable read_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ValidationError("cannot open '" + file.string() + "'");
    return read_csv(in);
}

}  // namespace pandemic::io
