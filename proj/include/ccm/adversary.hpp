#pragma once
// Robustness and incentive verification: regret accounting against the
// cost-optimal and completion-optimal baselines, the matched-pair worst case,
// closed-form bounds, the constrained multi-period adversary searches, and
// the report-and-stake incentive experiments.

#include <cstdint>
#include <vector>

#include "ccm/engine.hpp"
#include "ccm/matching.hpp"
#include "ccm/money.hpp"

namespace ccm {

// ---- single-period regret ----

struct RegretReport {
    std::int64_t s_regret{0};   // ticks: matched-cost total minus GCM's
    int d_regret{0};            // feasible count of GSM(reject) minus the matcher's
    int feasible{0};
    int infeasible{0};          // infeasible matches count as rejections for d_regret
    int rejected{0};
};
RegretReport regret(Algo algo, GsmFallback fb, const std::vector<PoolProvider>& pool,
                    const std::vector<int>& jobs, Money price);

// Closed-form supply-regret bound for n jobs on m providers with costs in
// [floor, price]: 0 when price == floor or n >= m; (price-floor)*n when
// n <= m/2; (price-floor)*(m-n) in between.
Money supply_regret_bound(int m, int n, Money price, Money floor);

// Universal bound floor(m/2) * (price - floor).
Money supply_regret_universal_bound(int m, Money price, Money floor);

// ---- matched-pair worst case ----
// k disjoint pairs (short expensive, long cheap), jobs presented pair by pair
// (easy length then threshold length) so the cheapest-feasible rule burns the
// long provider and strands the threshold job: d_regret = k = floor(n/2).
struct TightPairInstance {
    std::vector<PoolProvider> providers;
    std::vector<int> jobs;
};
TightPairInstance build_tight_pair_instance(int k);

// ---- cyclic restake structure ----

int cyclic_tau(int tau0, int t);  // tau(t) = tau0 - (t mod tau0), residues in {1..tau0}

struct Gap1Result {
    int hyper_period{0};        // lcm of the two cycles
    std::vector<int> window;    // periods with the long-cheap provider ahead by exactly 1
    bool coprime{false};
    bool matches_closed_form{false};  // empty iff gcd>1; else one cyclic block of len tau_short
};
Gap1Result gap1_window(int tau_short, int tau_long);

// ---- constrained two-provider adversary (one hyper-period) ----
// Rules: per period the adversary sends exactly one job per idle provider;
// total length at most the idle availability sum; a residual left by an
// infeasible match re-enters at the first later period with any idle
// provider and counts against both rules. Histories where a forced residual
// cannot legally re-enter are pruned. Exhaustive search with memoization.
struct AdversarySearchResult {
    int max_infeasible{0};
    bool per_period_bound_ok{true};  // no explored period took 2+ infeasible hits
    std::uint64_t states{0};
};
AdversarySearchResult two_provider_adversary_search(int tau_short, int tau_long, Algo algo);

// ---- peel-and-load thresholds (single-shot overload game) ----
// Providers anti-sorted (descending tau = ascending cost), budget sum(tau),
// exactly one job per provider. Formula: peel the i cheapest-to-peel providers
// feasibly, overload the rest; first i with cumulative save >= m - i.
struct PeelThresholds {
    std::vector<std::int64_t> saves;  // cumulative, as written (negatives kept)
    int i_star{0};                    // m+1 when no threshold holds
    int u_max{0};                     // m - i_star, floored at 0
};
PeelThresholds peel_thresholds_cfm(const std::vector<int>& taus_desc);
PeelThresholds peel_thresholds_gsm(const std::vector<int>& taus_desc);

// Exact optimum of the same game by exhaustive search (small m).
int peel_brute_force(const std::vector<int>& taus_desc, Algo algo);

// ---- incentive experiments ----

struct IncentiveConfig {
    int rivals{10};
    int horizon{6};
    int trials{10000};
    std::uint64_t seed{1};
    Money floor{Money::from_units(1)};
    Money cap{Money::from_units(4)};
    Money subject_cost{Money{6}};   // below the floor so the subject is always active
    int subject_tau{4};
};

struct IncentiveResult {
    double mean_a{0};       // mean return under arm A, ticks
    double mean_b{0};       // mean return under arm B, ticks
    double boot_lo{0};      // bootstrap 95% CI of mean(A - B)
    double boot_hi{0};
    bool conclusive{false};  // CI excludes zero
};

// Paired trials over random competitive populations: the subject's mean
// return reporting `report_a` vs `report_b` ticks.
IncentiveResult incentive_compare_reports(const IncentiveConfig& cfg, Money report_a, Money report_b);

// Same populations, zero staking delay vs `delay` periods (window end held
// fixed: the late staker arrives at `delay` with tau0 - delay availability).
IncentiveResult incentive_compare_delay(const IncentiveConfig& cfg, int delay);

// Mean-return curves over a report grid / over staking delays 0..max_delay,
// all arms evaluated on the same per-trial populations.
std::vector<std::pair<Money, double>> incentive_report_curve(const IncentiveConfig& cfg,
                                                             const std::vector<Money>& reports);
std::vector<double> incentive_delay_curve(const IncentiveConfig& cfg, int max_delay);

// Monopoly control: one provider, abundant demand. Returns (truthful return,
// over-report return); over-reporting above the floor drives the quote to the
// cap, so it pays. Demonstrates the competitiveness precondition is necessary.
std::pair<double, double> monopoly_over_report(Money true_cost, Money over_report);

}  // namespace ccm
