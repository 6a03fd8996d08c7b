#pragma once
// Core records shared across modules: providers, jobs, match ledger entries,
// per-period reports.

#include <cstdint>
#include <optional>
#include <vector>

#include "ccm/money.hpp"
#include "ccm/rational.hpp"
#include "ccm/value_fn.hpp"

namespace ccm {

enum class RestakeMode { none, cyclic };
enum class ProviderState { idle, assigned, dormant };

struct ProviderRecord {
    int id{0};
    Money reported_cost{};   // c_hat, what pricing/matching/payouts see
    Money true_cost{};       // private; only incentive experiments look at it
    int tau0{1};             // availability at (re)stake time
    int remaining{0};        // current availability, decays 1/period while staked
    ProviderState state{ProviderState::idle};
    RestakeMode restake{RestakeMode::none};
    int arrival{0};          // period the provider first stakes
    int busy_until{0};       // period the current assignment frees the provider

    bool staked(int t) const { return t >= arrival && remaining >= 1; }
};

enum class JobStatus { pending, matched, finished, rejected, residual };

struct JobSpec {
    int id{0};
    Money budget{};          // remaining budget (decreases as hours are paid)
    int deadline{1};         // T_d, periods counted from arrival
    int min_run{1};          // w underline
    ValueFn value;           // tabulated up to T_d
    int arrival{0};
    JobStatus status{JobStatus::pending};

    // rollover bookkeeping
    std::optional<int> kept_w{};  // frozen w_d (keep mode and residuals)
    int release{0};               // earliest period the job may (re)enter the queue
};

struct Assignment {
    int provider{0};
    int job{0};
    int period{0};        // match period (cohort anchor)
    Money price{};        // posted price at the match period, locked
    Money cost{};         // provider's reported cost at match
    int requested{0};     // w_d
    int hours{0};         // actually worked = min(w_d, remaining availability)
    bool feasible{true};
};

struct PayoutRow {
    int period{0};
    int provider{0};
    Money base{};        // reported cost component
    Rat share{};         // exact premium share for this hour
    Money paid{};        // emitted ticks after half-down rounding with carry
    Rat cumulative{};    // exact cumulative return so far
};

struct PeriodReport {
    int period{0};
    Money price{};
    double alpha{1.0};       // load at the solved quote
    int s_f{0};
    int d_total{0};          // pending queue size at quote time
    int d_submitted{0};      // jobs that chose w > 0 at the quote
    int matched{0};
    int infeasible{0};
    int rejected{0};         // deadline expiries this period
    std::optional<Money> max_matched_cost{};
    Money floor_after{};     // prevailing floor for the next period
    Rat treasury_delta{};    // user payments minus exact payouts this period
    bool clamped{false};
};

}  // namespace ccm
