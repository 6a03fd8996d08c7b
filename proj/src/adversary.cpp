#include "ccm/adversary.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "ccm/rng.hpp"
#include "ccm/value_fn.hpp"

namespace ccm {

// ---------------------------------------------------------------- regret ----

RegretReport regret(Algo algo, GsmFallback fb, const std::vector<PoolProvider>& pool,
                    const std::vector<int>& jobs, Money price) {
    auto mine = run_matcher(algo, fb, pool, jobs, static_cast<int>(price.ticks));
    auto cost_opt = run_gcm(pool, jobs, static_cast<int>(price.ticks));
    auto count_opt = run_gsm(pool, jobs, GsmFallback::reject);
    RegretReport r;
    r.s_regret = mine.total_cost - cost_opt.total_cost;
    r.d_regret = count_opt.feasible_matched - mine.feasible_matched;
    r.feasible = mine.feasible_matched;
    r.infeasible = mine.infeasible_matched;
    r.rejected = mine.rejected;
    return r;
}

Money supply_regret_bound(int m, int n, Money price, Money floor) {
    if (price == floor || n >= m) return Money{0};
    Money gap = price - floor;
    if (2 * n <= m) return gap * n;
    return gap * (m - n);
}

Money supply_regret_universal_bound(int m, Money price, Money floor) {
    return (price - floor) * (m / 2);
}

// --------------------------------------------------- matched-pair worst case

TightPairInstance build_tight_pair_instance(int k) {
    if (k < 1) throw std::invalid_argument("need at least one pair");
    TightPairInstance inst;
    // pair j: short provider tau = 2j-1, long provider tau = 2j,
    // costs descend with tau so longer is always cheaper.
    for (int j = 1; j <= k; ++j) {
        int id = static_cast<int>(inst.providers.size());
        inst.providers.push_back({id, 2 * j - 1, 2 * k + 2 - 2 * j});
        inst.providers.push_back({id + 1, 2 * j, 2 * k + 1 - 2 * j});
    }
    // jobs pair by pair, smallest pair first: each easy length 2j-1 tempts the
    // cheapest-feasible rule into burning a long provider from a later pair,
    // stranding the threshold length 2j that only long providers cover. One
    // lost job per pair, whether strands bounce or overload someone.
    for (int j = 1; j <= k; ++j) {
        inst.jobs.push_back(2 * j - 1);
        inst.jobs.push_back(2 * j);
    }
    return inst;
}

// ------------------------------------------------------------ restake cycle

int cyclic_tau(int tau0, int t) {
    if (tau0 < 1) throw std::invalid_argument("tau0 must be >= 1");
    return tau0 - (t % tau0);
}

Gap1Result gap1_window(int tau_short, int tau_long) {
    if (tau_short < 2 || tau_long <= tau_short)
        throw std::invalid_argument("need 2 <= tau_short < tau_long");
    Gap1Result g;
    g.hyper_period = std::lcm(tau_short, tau_long);
    g.coprime = std::gcd(tau_short, tau_long) == 1;
    for (int t = 0; t < g.hyper_period; ++t)
        if (cyclic_tau(tau_long, t) - cyclic_tau(tau_short, t) == 1) g.window.push_back(t);

    if (!g.coprime) {
        g.matches_closed_form = g.window.empty();
        return g;
    }
    // coprime: one cyclically contiguous block of length tau_short
    bool ok = static_cast<int>(g.window.size()) == tau_short;
    if (ok && static_cast<int>(g.window.size()) < g.hyper_period) {
        int breaks = 0;
        for (std::size_t i = 0; i < g.window.size(); ++i) {
            int cur = g.window[i];
            int nxt = g.window[(i + 1) % g.window.size()];
            if ((cur + 1) % g.hyper_period != nxt) ++breaks;
        }
        ok = breaks == 1;
    }
    g.matches_closed_form = ok;
    return g;
}

// ------------------------------------- two-provider constrained adversary --

namespace {

constexpr int kInvalid = std::numeric_limits<int>::min() / 4;

struct SearchState {
    int t{0};
    int r0{0};  // remaining busy periods at the start of t (0 = idle)
    int r1{0};
    std::array<int, 2> pending{};  // residual lengths awaiting re-entry, sorted
    int npending{0};

    friend auto operator<=>(const SearchState&, const SearchState&) = default;
};

struct Searcher {
    int horizon{0};
    std::array<int, 2> tau0{};
    std::array<int, 2> cost{};  // short expensive, long cheap (anti-sorted fresh)
    Algo algo{Algo::cfm};
    std::map<SearchState, int> memo;
    bool per_period_ok{true};
    std::uint64_t states{0};

    int pick(const std::vector<int>& avail, const std::array<int, 2>& taus, int w) const {
        int best = -1;
        bool best_feasible = false;
        for (int i : avail) {
            bool feas = taus[i] >= w;
            if (best == -1) {
                best = i;
                best_feasible = feas;
                continue;
            }
            if (feas != best_feasible) {
                if (feas) {
                    best = i;
                    best_feasible = true;
                }
                continue;
            }
            if (feas) {
                bool better = algo == Algo::cfm
                                  ? std::tuple(cost[i], taus[i], i) < std::tuple(cost[best], taus[best], best)
                                  : std::tuple(taus[i], i) < std::tuple(taus[best], best);
                if (better) best = i;
            } else {
                // fallback: longest first; cfm breaks ties cheaper, gsm by id
                bool better = algo == Algo::cfm
                                  ? std::tuple(-taus[i], cost[i], i) < std::tuple(-taus[best], cost[best], best)
                                  : std::tuple(-taus[i], i) < std::tuple(-taus[best], best);
                if (better) best = i;
            }
        }
        return best;
    }

    int rec(int t, int r0, int r1, std::array<int, 2> pending, int npending) {
        if (t == horizon) return 0;
        std::sort(pending.begin(), pending.begin() + npending);
        for (int i = npending; i < 2; ++i) pending[i] = 0;
        SearchState key{t, r0, r1, pending, npending};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        ++states;

        std::array<int, 2> taus{cyclic_tau(tau0[0], t), cyclic_tau(tau0[1], t)};
        std::vector<int> idle;
        if (r0 == 0) idle.push_back(0);
        if (r1 == 0) idle.push_back(1);

        if (idle.empty()) {
            int value = rec(t + 1, r0 - 1, r1 - 1, pending, npending);
            memo[key] = value;
            return value;
        }

        // every pending residual re-enters now, as part of this period's quota
        std::vector<int> forced(pending.begin(), pending.begin() + npending);
        int k = static_cast<int>(idle.size());
        int budget = 0;
        for (int i : idle) budget += taus[i];
        int forced_sum = std::accumulate(forced.begin(), forced.end(), 0);

        std::vector<std::vector<int>> seqs;
        if (forced_sum <= budget && static_cast<int>(forced.size()) <= k) {
            if (k == 1) {
                if (forced.size() == 1) {
                    seqs.push_back({forced[0]});
                } else {
                    for (int w = 1; w <= budget; ++w) seqs.push_back({w});
                }
            } else {  // k == 2
                if (forced.size() == 2) {
                    seqs.push_back({forced[0], forced[1]});
                    seqs.push_back({forced[1], forced[0]});
                } else if (forced.size() == 1) {
                    for (int w = 1; w + forced[0] <= budget; ++w) {
                        seqs.push_back({forced[0], w});
                        seqs.push_back({w, forced[0]});
                    }
                } else {
                    for (int w1 = 1; w1 + 1 <= budget; ++w1)
                        for (int w2 = 1; w1 + w2 <= budget; ++w2) seqs.push_back({w1, w2});
                }
            }
        }

        int value = kInvalid;
        for (const auto& seq : seqs) {
            std::array<int, 2> rn{r0 > 0 ? r0 - 1 : 0, r1 > 0 ? r1 - 1 : 0};
            std::vector<int> avail = idle;
            std::array<int, 2> created{};
            int ncreated = 0;
            int inf_here = 0;
            for (int w : seq) {
                int i = pick(avail, taus, w);
                avail.erase(std::find(avail.begin(), avail.end(), i));
                int worked = std::min(w, taus[i]);
                rn[i] = worked - 1;
                if (w > taus[i]) {
                    ++inf_here;
                    if (ncreated >= 2) throw std::logic_error("more than one residual per provider");
                    created[ncreated++] = w - taus[i];
                }
            }
            if (inf_here >= 2) per_period_ok = false;
            int sub = rec(t + 1, rn[0], rn[1], created, ncreated);
            if (sub == kInvalid) continue;
            value = std::max(value, inf_here + sub);
        }

        memo[key] = value;
        return value;
    }
};

}  // namespace

AdversarySearchResult two_provider_adversary_search(int tau_short, int tau_long, Algo algo) {
    if (tau_short < 2 || tau_long <= tau_short)
        throw std::invalid_argument("need 2 <= tau_short < tau_long");
    if (std::lcm(tau_short, tau_long) > 24)
        throw std::invalid_argument("hyper-period above the exhaustive-search limit of 24");
    if (algo == Algo::gcm) throw std::invalid_argument("search covers gsm and cfm");
    Searcher s;
    s.horizon = std::lcm(tau_short, tau_long);
    s.tau0 = {tau_short, tau_long};
    s.cost = {2, 1};
    s.algo = algo;
    int best = s.rec(0, 0, 0, {}, 0);
    if (best == kInvalid) throw std::logic_error("search found no legal schedule");
    return {best, s.per_period_ok, s.states};
}

// ----------------------------------------------- peel-and-load thresholds --

namespace {

PeelThresholds finish_thresholds(std::vector<std::int64_t> terms) {
    PeelThresholds p;
    int m = static_cast<int>(terms.size());
    std::int64_t run = 0;
    for (int i = 1; i <= m; ++i) {
        run += terms[i - 1];
        p.saves.push_back(run);
    }
    p.i_star = m + 1;
    for (int i = 1; i <= m; ++i)
        if (p.saves[i - 1] >= m - i) {
            p.i_star = i;
            break;
        }
    p.u_max = std::max(0, m - p.i_star);
    return p;
}

void require_anti_sorted(const std::vector<int>& taus_desc) {
    if (taus_desc.empty()) throw std::invalid_argument("empty pool");
    for (std::size_t i = 0; i + 1 < taus_desc.size(); ++i)
        if (taus_desc[i] < taus_desc[i + 1])
            throw std::invalid_argument("taus must be non-increasing");
    for (int tau : taus_desc)
        if (tau < 2) throw std::invalid_argument("tau must be >= 2");
}

}  // namespace

PeelThresholds peel_thresholds_cfm(const std::vector<int>& taus_desc) {
    require_anti_sorted(taus_desc);
    std::vector<std::int64_t> terms;
    for (int tau : taus_desc) terms.push_back(tau - 1);
    return finish_thresholds(std::move(terms));
}

PeelThresholds peel_thresholds_gsm(const std::vector<int>& taus_desc) {
    require_anti_sorted(taus_desc);
    int m = static_cast<int>(taus_desc.size());
    std::vector<std::int64_t> terms;
    for (int j = 0; j < m; ++j) {
        int next = j + 1 < m ? taus_desc[j + 1] : 1;
        terms.push_back(taus_desc[j] - next - 1);
    }
    return finish_thresholds(std::move(terms));
}

int peel_brute_force(const std::vector<int>& taus_desc, Algo algo) {
    require_anti_sorted(taus_desc);
    if (algo == Algo::gcm) throw std::invalid_argument("game covers gsm and cfm");
    std::map<std::pair<std::vector<int>, int>, int> memo;

    // state: remaining providers (multiset, descending) and remaining budget;
    // one job per remaining provider, each length >= 1.
    auto rec = [&](auto&& self, std::vector<int> taus, int budget) -> int {
        if (taus.empty()) return 0;
        auto key = std::pair(taus, budget);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        int cnt = static_cast<int>(taus.size());
        int best = 0;
        for (int w = 1; w <= budget - (cnt - 1); ++w) {
            int victim;  // index into taus (descending order)
            int overload;
            if (algo == Algo::cfm) {
                // anti-sorted: cheapest feasible = longest; fallback also longest
                victim = 0;
                overload = w > taus[0] ? 1 : 0;
            } else {
                // shortest feasible, longest fallback
                auto it = std::lower_bound(taus.rbegin(), taus.rend(), w);
                if (it != taus.rend()) {
                    victim = static_cast<int>(taus.rend() - it) - 1;
                    overload = 0;
                } else {
                    victim = 0;
                    overload = 1;
                }
            }
            std::vector<int> rest = taus;
            rest.erase(rest.begin() + victim);
            best = std::max(best, overload + self(self, std::move(rest), budget - w));
        }
        memo[key] = best;
        return best;
    };

    int budget = std::accumulate(taus_desc.begin(), taus_desc.end(), 0);
    return rec(rec, taus_desc, budget);
}

// ------------------------------------------------------------- incentives --

namespace {

struct TrialPopulation {
    std::vector<ProviderRecord> providers;
    std::vector<JobSpec> jobs;
};

TrialPopulation build_population(const IncentiveConfig& cfg, std::uint64_t trial,
                                 Money subject_report, int subject_arrival, int subject_tau) {
    TrialPopulation pop;
    ProviderRecord subject;
    subject.id = 0;
    subject.reported_cost = subject_report;
    subject.true_cost = cfg.subject_cost;
    subject.tau0 = subject_tau;
    subject.restake = RestakeMode::cyclic;
    subject.arrival = subject_arrival;
    pop.providers.push_back(subject);

    for (int i = 1; i <= cfg.rivals; ++i) {
        Rng pr = derive_stream(cfg.seed, StreamKind::provider, trial * 64 + static_cast<std::uint64_t>(i));
        ProviderRecord rec;
        rec.id = i;
        std::int64_t c = std::max<std::int64_t>(1, cfg.subject_cost.ticks + pr.uniform_int(-2, 2));
        rec.reported_cost = Money{c};
        rec.true_cost = Money{c};
        rec.tau0 = static_cast<int>(pr.uniform_int(2, 6));
        rec.restake = RestakeMode::cyclic;
        rec.arrival = 0;
        pop.providers.push_back(rec);
    }

    // truthful reporting only beats inflation when the match probability falls
    // sharply in the reported cost, and that needs slack capacity: demand must
    // stay well below the idle pool so the cost ranking, not scarcity, decides
    // who works. One job per four providers leaves the expensive tail idle
    // most periods even after multi-hour jobs tie providers up.
    int per_period = std::max(1, (cfg.rivals + 2) / 4);
    int id = 0;
    for (int t = 0; t < cfg.horizon; ++t) {
        for (int j = 0; j < per_period; ++j) {
            Rng jr = derive_stream(cfg.seed, StreamKind::job,
                                   trial * 1024 + static_cast<std::uint64_t>(t) * 32 +
                                       static_cast<std::uint64_t>(j));
            JobSpec job;
            job.id = id++;
            job.budget = Money::from_units(jr.uniform_int(3, 8));
            job.deadline = static_cast<int>(jr.uniform_int(1, 3));
            job.min_run = 1;
            double a = 20.0 + static_cast<double>(jr.uniform_int(0, 20));
            double gamma = 0.5 + 0.4 * jr.uniform_real();
            job.value = ValueFn::power(a, gamma, job.deadline);
            job.arrival = t;
            pop.jobs.push_back(job);
        }
    }
    return pop;
}

double run_profit(const IncentiveConfig& cfg, TrialPopulation pop) {
    MarketParams params;
    params.pricing.kind = PricingKind::linear_capped;
    params.pricing.floor = cfg.floor;
    params.pricing.cap = cfg.cap;
    params.pricing.slope = Money{10};
    params.horizon = cfg.horizon;
    params.algo = Algo::cfm;
    params.seed = cfg.seed;
    MarketState s = init_market(params, std::move(pop.providers), std::move(pop.jobs));
    run_market(s);
    double revenue = 0;
    if (auto it = s.cumulative.find(0); it != s.cumulative.end()) revenue = it->second.to_double();
    std::int64_t hours = 0;
    for (const auto& a : s.ledger)
        if (a.provider == 0) hours += a.hours;
    return revenue - static_cast<double>(cfg.subject_cost.ticks * hours);
}

std::pair<double, double> bootstrap_ci(const std::vector<double>& diffs, std::uint64_t seed) {
    Rng rng = derive_stream(seed, StreamKind::misc, 424242);
    const int resamples = 1000;
    std::size_t n = diffs.size();
    std::vector<double> means;
    means.reserve(resamples);
    for (int b = 0; b < resamples; ++b) {
        double sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            sum += diffs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1))];
        means.push_back(sum / static_cast<double>(n));
    }
    std::sort(means.begin(), means.end());
    return {means[25], means[974]};
}

IncentiveResult paired_trials(const IncentiveConfig& cfg,
                              const std::function<double(std::uint64_t)>& profit_a,
                              const std::function<double(std::uint64_t)>& profit_b) {
    std::vector<double> a(cfg.trials), b(cfg.trials);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < cfg.trials; ++t) {
        a[t] = profit_a(static_cast<std::uint64_t>(t));
        b[t] = profit_b(static_cast<std::uint64_t>(t));
    }
    IncentiveResult r;
    std::vector<double> diffs(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) {
        r.mean_a += a[t];
        r.mean_b += b[t];
        diffs[t] = a[t] - b[t];
    }
    r.mean_a /= cfg.trials;
    r.mean_b /= cfg.trials;
    auto [lo, hi] = bootstrap_ci(diffs, cfg.seed);
    r.boot_lo = lo;
    r.boot_hi = hi;
    r.conclusive = (lo > 0.0) || (hi < 0.0);
    return r;
}

}  // namespace

IncentiveResult incentive_compare_reports(const IncentiveConfig& cfg, Money report_a, Money report_b) {
    auto runner = [&cfg](Money report) {
        return [&cfg, report](std::uint64_t trial) {
            return run_profit(cfg, build_population(cfg, trial, report, 0, cfg.subject_tau));
        };
    };
    return paired_trials(cfg, runner(report_a), runner(report_b));
}

IncentiveResult incentive_compare_delay(const IncentiveConfig& cfg, int delay) {
    if (delay < 1 || delay >= cfg.subject_tau)
        throw std::invalid_argument("delay must be in [1, subject_tau)");
    auto runner = [&cfg](int arrival, int tau) {
        return [&cfg, arrival, tau](std::uint64_t trial) {
            return run_profit(cfg, build_population(cfg, trial, cfg.subject_cost, arrival, tau));
        };
    };
    // window end held fixed: late staking forfeits the skipped prefix
    return paired_trials(cfg, runner(0, cfg.subject_tau), runner(delay, cfg.subject_tau - delay));
}

std::vector<std::pair<Money, double>> incentive_report_curve(const IncentiveConfig& cfg,
                                                             const std::vector<Money>& reports) {
    std::vector<std::pair<Money, double>> curve;
    curve.reserve(reports.size());
    for (Money report : reports) {
        std::vector<double> profit(cfg.trials);
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < cfg.trials; ++t)
            profit[t] = run_profit(cfg, build_population(cfg, static_cast<std::uint64_t>(t), report, 0,
                                                         cfg.subject_tau));
        double mean = 0;
        for (double p : profit) mean += p;
        curve.emplace_back(report, mean / cfg.trials);
    }
    return curve;
}

std::vector<double> incentive_delay_curve(const IncentiveConfig& cfg, int max_delay) {
    if (max_delay < 0 || max_delay >= cfg.subject_tau)
        throw std::invalid_argument("max_delay must be in [0, subject_tau)");
    std::vector<double> curve;
    curve.reserve(static_cast<std::size_t>(max_delay) + 1);
    for (int delay = 0; delay <= max_delay; ++delay) {
        std::vector<double> profit(cfg.trials);
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < cfg.trials; ++t)
            profit[t] = run_profit(cfg, build_population(cfg, static_cast<std::uint64_t>(t), cfg.subject_cost,
                                                         delay, cfg.subject_tau - delay));
        double mean = 0;
        for (double p : profit) mean += p;
        curve.push_back(mean / cfg.trials);
    }
    return curve;
}

std::pair<double, double> monopoly_over_report(Money true_cost, Money over_report) {
    auto profit = [&](Money report) {
        IncentiveConfig cfg;
        cfg.rivals = 0;
        cfg.horizon = 4;
        cfg.subject_cost = true_cost;
        cfg.subject_tau = 4;
        TrialPopulation pop;
        ProviderRecord subject;
        subject.id = 0;
        subject.reported_cost = report;
        subject.true_cost = true_cost;
        subject.tau0 = 4;
        subject.restake = RestakeMode::cyclic;
        pop.providers.push_back(subject);
        int id = 0;
        for (int t = 0; t < cfg.horizon; ++t) {
            for (int j = 0; j < 2; ++j) {
                JobSpec job;
                job.id = id++;
                job.budget = Money::from_units(20);
                job.deadline = 2;
                job.min_run = 1;
                job.value = ValueFn::power(60.0, 0.9, 2);
                job.arrival = t;
                pop.jobs.push_back(job);
            }
        }
        return run_profit(cfg, std::move(pop));
    };
    return {profit(true_cost), profit(over_report)};
}

}  // namespace ccm
