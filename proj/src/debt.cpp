#include "pandemic/debt.hpp"

#include <algorithm>
#include <cmath>

#include "pandemic/error.hpp"

namespace pandemic::debt {

std::string to_string(Financing f) {
    switch (f) {
        case Financing::tax: return "tax";
        case Financing::internal_debt: return "internal_debt";
        case Financing::external_debt: return "external_debt";
    }
    return "tax";
}

Financing parse_financing(const std::string& text) {
    if (text == "tax") return Financing::tax;
    if (text == "internal_debt") return Financing::internal_debt;
    if (text == "external_debt") return Financing::external_debt;
    throw ValidationError("financing: expected tax | internal_debt | external_debt, got '" + text + "'");
}

void LedgerConfig::validate() const {
    auto nonneg = [](double v, const char* field) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(std::string(field) + ": must be finite and >= 0");
    };
    if (periods < 2) throw ValidationError("periods: must be >= 2");
    nonneg(cohort_income, "cohort_income");
    nonneg(gov_spending, "gov_spending");
    nonneg(interest_rate, "interest_rate");
    nonneg(marginal_product, "marginal_product");
    nonneg(crowding_out_share, "crowding_out_share");
    if (crowding_out_share > 1.0) throw ValidationError("crowding_out_share: must lie in [0, 1]");
    nonneg(bondholder_share, "bondholder_share");
    if (bondholder_share > 1.0) throw ValidationError("bondholder_share: must lie in [0, 1]");
}

double GenerationalLedger::max_accounting_residual() const {
    double worst = 0.0;
    for (const auto& r : records) {
        const double household = r.aggregate_consumption - (r.output - r.taxes + r.transfers_to_domestic_bondholders -
                                                             r.bond_purchases - r.investment);
        const double government = (r.gov_spending + r.debt_service) - (r.taxes + r.bond_sales);
        const double resources =
            (r.output + r.foreign_inflow) - (r.aggregate_consumption + r.gov_spending + r.investment + r.payments_abroad);
        const double split = (r.holder_consumption + r.nonholder_consumption) - r.aggregate_consumption;
        worst = std::max({worst, std::abs(household), std::abs(government), std::abs(resources), std::abs(split)});
    }
    return worst;
}

GenerationalLedger run_ledger(const LedgerConfig& config) {
    config.validate();
    if (config.gov_spending > config.cohort_income) {
        throw InfeasibleError("gov_spending " + std::to_string(config.gov_spending) + " exceeds period-1 output " +
                              std::to_string(config.cohort_income));
    }

    const bool internal = config.financing == Financing::internal_debt;
    const bool external = config.financing == Financing::external_debt;
    const double debt = config.financing == Financing::tax ? 0.0 : config.gov_spending;
    // Ricardian savers absorb the issue without tightening the capital market;
    // debt sold abroad draws on foreign saving.
    const double crowding = internal && !config.ricardian ? config.crowding_out_share : 0.0;
    const double displaced = crowding * debt;
    const double redemption = debt * (1.0 + config.interest_rate * static_cast<double>(config.periods - 1));
    const double theta = config.bondholder_share;

    GenerationalLedger ledger;
    ledger.config = config;
    ledger.debt = debt;
    for (int t = 1; t <= config.periods; ++t) {
        PeriodRecord r;
        r.period = t;
        if (t == 1) {
            r.output = config.cohort_income;
            r.gov_spending = config.gov_spending;
            r.taxes = config.financing == Financing::tax ? config.gov_spending : 0.0;
            r.bond_sales = debt;
            r.bond_purchases = internal ? debt : 0.0;
            r.foreign_inflow = external ? debt : 0.0;
            r.investment = -displaced;
        } else {
            r.output = config.cohort_income - config.marginal_product * displaced;
        }
        if (t == config.periods && debt > 0.0) {
            r.debt_service = redemption;
            r.taxes = redemption;
            r.transfers_to_domestic_bondholders = internal ? redemption : 0.0;
            r.payments_abroad = external ? redemption : 0.0;
        }
        const double disposable = r.output - r.taxes;
        r.aggregate_consumption = disposable + r.transfers_to_domestic_bondholders - r.bond_purchases - r.investment;
        r.nonholder_consumption = (1.0 - theta) * disposable;
        r.holder_consumption = r.aggregate_consumption - r.nonholder_consumption;
        ledger.records.push_back(r);
    }
    return ledger;
}

const GenerationalLedger& FinancingComparison::of(Financing f) const {
    for (const auto& l : ledgers) {
        if (l.config.financing == f) return l;
    }
    throw ValidationError("comparison has no ledger for " + to_string(f));
}

FinancingComparison compare_financing(const LedgerConfig& config) {
    FinancingComparison out;
    out.config = config;
    for (Financing f : kAllFinancing) {
        LedgerConfig c = config;
        c.financing = f;
        out.ledgers.push_back(run_ledger(c));
    }
    return out;
}

WartimeOutcome wartime_no_capital_demo(double gov_spending, double cohort_income, Financing financing) {
    if (!std::isfinite(gov_spending) || gov_spending < 0.0) throw ValidationError("gov_spending: must be >= 0");
    if (!std::isfinite(cohort_income) || cohort_income < 0.0) throw ValidationError("cohort_income: must be >= 0");
    if (gov_spending > cohort_income) {
        throw InfeasibleError("gov_spending exceeds current output; a no-capital economy cannot borrow resources "
                              "from the future");
    }

    WartimeOutcome out;
    out.baseline_consumption = cohort_income;
    if (financing == Financing::external_debt) {
        // Foreign lenders cannot ship goods into a closed economy, so the
        // resource constraint binds exactly as under the other modes.
        out.period1_consumption = cohort_income - gov_spending;
        out.borne_by = "residents whose output is diverted to the government";
    } else {
        LedgerConfig c;
        c.periods = 2;
        c.cohort_income = cohort_income;
        c.gov_spending = gov_spending;
        c.financing = financing;
        out.period1_consumption = run_ledger(c).records.front().aggregate_consumption;
        out.borne_by = financing == Financing::tax ? "taxpayers" : "bond buyers who cut consumption";
    }
    out.period1_consumption_drop = out.baseline_consumption - out.period1_consumption;
    return out;
}

}  // namespace pandemic::debt
