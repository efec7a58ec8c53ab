#pragma once

#include <array>
#include <string>
#include <vector>

namespace pandemic::debt {

enum class Financing { tax, internal_debt, external_debt };

std::string to_string(Financing f);
Financing parse_financing(const std::string& text);

inline constexpr std::array<Financing, 3> kAllFinancing{Financing::tax, Financing::internal_debt,
                                                        Financing::external_debt};

/// A "generation" is everybody alive in a period. Spending happens in
/// period 1; debt is redeemed with simple interest in the final period.
struct LedgerConfig {
    int periods = 2;
    double cohort_income = 100.0;
    double gov_spending = 0.0;
    Financing financing = Financing::tax;
    double interest_rate = 0.0;
    double crowding_out_share = 0.0;  // share of domestically absorbed debt displacing investment
    double marginal_product = 0.0;    // output lost per period per unit of displaced capital
    bool ricardian = false;
    double bondholder_share = 0.5;    // income share of the households that buy bonds

    void validate() const;
    bool operator==(const LedgerConfig&) const = default;
};

/// One period of the ledger. `investment` is measured against the
/// no-spending baseline, so displaced investment is negative.
struct PeriodRecord {
    int period = 0;
    double output = 0.0;
    double gov_spending = 0.0;
    double taxes = 0.0;
    double bond_sales = 0.0;
    double bond_purchases = 0.0;  // by residents
    double foreign_inflow = 0.0;  // bonds bought abroad
    double debt_service = 0.0;
    double transfers_to_domestic_bondholders = 0.0;
    double payments_abroad = 0.0;
    double investment = 0.0;
    double aggregate_consumption = 0.0;
    double holder_consumption = 0.0;
    double nonholder_consumption = 0.0;
};

struct GenerationalLedger {
    LedgerConfig config;
    double debt = 0.0;  // principal issued in period 1
    std::vector<PeriodRecord> records;

    // Largest violation over all periods of the household budget, the
    // government budget and the resource balance.
    double max_accounting_residual() const;
};

GenerationalLedger run_ledger(const LedgerConfig& config);

struct FinancingComparison {
    LedgerConfig config;
    std::vector<GenerationalLedger> ledgers;  // tax, internal_debt, external_debt

    const GenerationalLedger& of(Financing f) const;
};

FinancingComparison compare_financing(const LedgerConfig& config);

struct WartimeOutcome {
    double baseline_consumption = 0.0;
    double period1_consumption = 0.0;
    double period1_consumption_drop = 0.0;
    std::string borne_by;
};

// Economy with no capital and no goods imports: all output is consumed, so
// whatever the government uses comes out of current consumption.
WartimeOutcome wartime_no_capital_demo(double gov_spending, double cohort_income, Financing financing);

}  // namespace pandemic::debt
