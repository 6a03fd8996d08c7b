#pragma once
// Stake-and-tolerance completion race. Every racer posts a stake B and quotes
// a completion time; the lowest quote (ties to the lower id) wins, is paid
// price * quote, and keeps the stake iff delivery lands inside the tolerance
// window around the quote. Two-sided window by default (early or late beyond
// epsilon forfeits); one_sided tolerates early finishes.

#include <cstdint>
#include <optional>
#include <vector>

#include "ccm/money.hpp"

namespace ccm {

struct Racer {
    int id{0};
    int t_true{1};                // realized completion hours
    std::optional<int> quote{};   // defaults to t_true - epsilon (lowest undominated)
};

struct RaceConfig {
    Money price{};    // per-hour price P
    Money stake{};    // B; must exceed price * every submitted quote
    int epsilon{0};
    bool one_sided{false};
    std::vector<Racer> racers;
};

struct RaceOutcome {
    int winner{0};
    int quote{0};
    int t_true{0};
    Money paid{};            // price * quote
    bool on_time{false};
    Money stake_returned{};  // stake or zero
};

int effective_quote(const RaceConfig& cfg, const Racer& r);
bool within_window(const RaceConfig& cfg, int t_true, int quote);

// Validates the stake bound (throws std::invalid_argument), picks the winner,
// settles payment and stake.
RaceOutcome run_race(const RaceConfig& cfg);

// Payoff table for every racer over a quote grid [t - eps - pad, t + eps + pad],
// against the full product of opponents' grids. Payoff when winning is
// price * quote minus the stake when the window is missed; zero otherwise.
// `undominated` marks quotes not weakly dominated within the racer's grid.
struct ScanRow {
    int racer{0};
    int quote{0};
    std::int64_t wins{0};          // profiles this quote wins
    std::int64_t min_payoff{0};    // ticks
    std::int64_t max_payoff{0};    // ticks
    bool undominated{false};
};
std::vector<ScanRow> best_response_scan(const RaceConfig& cfg, int pad);

}  // namespace ccm
