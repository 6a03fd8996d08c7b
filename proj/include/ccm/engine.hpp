#pragma once
// The period loop: each period computes floor supply and pending demand,
// quotes the equilibrium price, lets users pick hours, matches arrivals
// online, settles the hour's payouts, then decays availability and restakes
// cyclic providers. Deterministic: identical params + population + seed give
// byte-identical histories.

#include <cstdint>
#include <vector>

#include "ccm/matching.hpp"
#include "ccm/payout.hpp"
#include "ccm/pricing.hpp"
#include "ccm/types.hpp"

namespace ccm {

struct MarketParams {
    PricingFn pricing{};                 // carries the initial floor and the cap
    int horizon{1};
    Algo algo{Algo::cfm};
    GsmFallback gsm_fallback{GsmFallback::reject};
    bool floor_update{false};            // trailing-mean floor adjustment on/off
    int floor_window{3};
    bool reoptimize{true};               // rolled-over jobs re-pick w at the new price
    std::uint64_t seed{0};
};

struct MarketState {
    MarketParams params;
    std::vector<ProviderRecord> providers;  // id == index
    std::vector<JobSpec> jobs;              // id == index
    std::vector<int> queue;                 // pending job ids, FIFO with stable rollover
    int period{0};
    Money floor{};                          // prevailing floor price
    std::vector<Money> floor_history;       // per-period max matched cost (or floor)
    std::vector<Assignment> ledger;
    std::vector<PeriodReport> history;
    std::vector<PayoutRow> payout_rows;
    std::map<int, Rat> carry;               // per-provider sub-tick remainders
    std::map<int, Rat> cumulative;          // per-provider exact returns
    std::map<int, Money> paid;              // per-provider emitted ticks
    std::map<int, Rat> treasury;            // period -> delta
};

MarketState init_market(MarketParams params, std::vector<ProviderRecord> providers,
                        std::vector<JobSpec> jobs);

// Whether a queued job would submit at the price (choose_hours in re-optimize
// mode; frozen w with a budget re-check for keep mode and residuals).
int submitted_hours(const JobSpec& job, Money price);

void advance_period(MarketState& s);      // one full period
void decay_and_restake(MarketState& s);   // availability decay + cyclic restake only
void run_market(MarketState& s);          // advance to the horizon

}  // namespace ccm
