#include "ccm/race.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccm {

int effective_quote(const RaceConfig& cfg, const Racer& r) {
    if (r.quote) return *r.quote;
    return std::max(1, r.t_true - cfg.epsilon);
}

bool within_window(const RaceConfig& cfg, int t_true, int quote) {
    if (cfg.one_sided) return t_true <= quote + cfg.epsilon;  // early is tolerated
    return std::abs(t_true - quote) <= cfg.epsilon;
}

namespace {

void validate(const RaceConfig& cfg, const std::vector<int>& quotes) {
    if (cfg.racers.empty()) throw std::invalid_argument("race: no racers");
    if (cfg.epsilon < 0) throw std::invalid_argument("race: epsilon must be >= 0");
    for (std::size_t i = 0; i < cfg.racers.size(); ++i) {
        if (cfg.racers[i].t_true < 1) throw std::invalid_argument("race: t_true must be >= 1");
        if (quotes[i] < 1) throw std::invalid_argument("race: quotes must be >= 1");
        if (cfg.stake <= cfg.price * quotes[i])
            throw std::invalid_argument("race: stake must exceed price * every quote");
    }
}

}  // namespace

RaceOutcome run_race(const RaceConfig& cfg) {
    std::vector<int> quotes;
    for (const auto& r : cfg.racers) quotes.push_back(effective_quote(cfg, r));
    validate(cfg, quotes);

    std::size_t win = 0;
    for (std::size_t i = 1; i < cfg.racers.size(); ++i) {
        if (quotes[i] < quotes[win] ||
            (quotes[i] == quotes[win] && cfg.racers[i].id < cfg.racers[win].id))
            win = i;
    }
    const Racer& w = cfg.racers[win];
    RaceOutcome out;
    out.winner = w.id;
    out.quote = quotes[win];
    out.t_true = w.t_true;
    out.paid = cfg.price * out.quote;
    out.on_time = within_window(cfg, w.t_true, out.quote);
    out.stake_returned = out.on_time ? cfg.stake : Money{0};
    return out;
}

std::vector<ScanRow> best_response_scan(const RaceConfig& cfg, int pad) {
    const std::size_t n = cfg.racers.size();
    if (n == 0) throw std::invalid_argument("race: no racers");
    if (pad < 0) throw std::invalid_argument("race: pad must be >= 0");

    std::vector<std::vector<int>> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        int lo = std::max(1, cfg.racers[i].t_true - cfg.epsilon - pad);
        int hi = cfg.racers[i].t_true + cfg.epsilon + pad;
        for (int q = lo; q <= hi; ++q) grid[i].push_back(q);
    }

    auto payoff = [&](std::size_t i, int q, const std::vector<int>& opp)
        -> std::pair<bool, std::int64_t> {
        // opp holds the other racers' quotes, in racer order with i skipped
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            int qj = opp[k++];
            if (qj < q || (qj == q && cfg.racers[j].id < cfg.racers[i].id))
                return {false, 0};  // loses
        }
        std::int64_t pay = cfg.price.ticks * q;
        if (!within_window(cfg, cfg.racers[i].t_true, q)) pay -= cfg.stake.ticks;
        return {true, pay};
    };

    std::vector<ScanRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
        // enumerate the opponent-profile product once per racer
        std::vector<std::size_t> oppidx;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) oppidx.push_back(j);
        std::vector<std::vector<int>> profiles;
        std::vector<int> cur(oppidx.size());
        auto gen = [&](auto&& self, std::size_t k) -> void {
            if (k == oppidx.size()) { profiles.push_back(cur); return; }
            for (int q : grid[oppidx[k]]) { cur[k] = q; self(self, k + 1); }
        };
        gen(gen, 0);

        // payoff vectors per own quote
        std::vector<std::vector<std::int64_t>> vec(grid[i].size());
        std::vector<std::int64_t> wins(grid[i].size(), 0);
        for (std::size_t qi = 0; qi < grid[i].size(); ++qi) {
            vec[qi].reserve(profiles.size());
            for (const auto& prof : profiles) {
                auto [won, pay] = payoff(i, grid[i][qi], prof);
                vec[qi].push_back(pay);
                wins[qi] += won ? 1 : 0;
            }
        }

        for (std::size_t qi = 0; qi < grid[i].size(); ++qi) {
            ScanRow row;
            row.racer = cfg.racers[i].id;
            row.quote = grid[i][qi];
            row.wins = wins[qi];
            row.min_payoff = *std::min_element(vec[qi].begin(), vec[qi].end());
            row.max_payoff = *std::max_element(vec[qi].begin(), vec[qi].end());
            bool dominated = false;
            for (std::size_t qj = 0; qj < grid[i].size() && !dominated; ++qj) {
                if (qj == qi) continue;
                bool ge_all = true, gt_some = false;
                for (std::size_t p = 0; p < profiles.size(); ++p) {
                    if (vec[qj][p] < vec[qi][p]) { ge_all = false; break; }
                    if (vec[qj][p] > vec[qi][p]) gt_some = true;
                }
                dominated = ge_all && gt_some;
            }
            row.undominated = !dominated;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace ccm
