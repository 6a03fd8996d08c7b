#include "ccm/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ccm/adversary.hpp"
#include "ccm/demand.hpp"
#include "ccm/engine.hpp"
#include "ccm/matching.hpp"
#include "ccm/payout.hpp"
#include "ccm/pricing.hpp"
#include "ccm/race.hpp"
#include "ccm/report.hpp"
#include "ccm/rng.hpp"
#include "ccm/scenario.hpp"

namespace ccm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_double(double v, int prec = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

void maybe_write(const VerifyOptions& o, const std::string& name, const std::string& content) {
    if (!o.out_dir.empty()) write_file(o.out_dir + "/" + name, content);
}

const char* algo_label(Algo a) {
    switch (a) {
        case Algo::gcm: return "gcm";
        case Algo::gsm: return "gsm";
        case Algo::cfm: return "cfm";
    }
    return "?";
}

// ------------------------------------------------------------------------
// golden scenarios embedded for the determinism bundle (the same text ships
// as files under scenarios/)

constexpr const char* kFloorRegimeScenario = R"(# quiet market: demand never exceeds floor supply
[market]
floor = 1.0
cap = 4.0
horizon = 6
algo = cfm
seed = 7

[pricing]
kind = linear_capped
slope = 1.0

[providers]
provider = cost=0.8 tau=3 restake=cyclic
provider = cost=0.9 tau=2 restake=cyclic
provider = cost=1.4 tau=4 restake=cyclic

[jobs]
job = budget=4.0 deadline=2 min_run=1 value=0,2.0,3.0 arrival=0
job = budget=4.0 deadline=2 min_run=1 value=0,2.0,3.0 arrival=2
job = budget=4.0 deadline=2 min_run=1 value=0,2.0,3.0 arrival=4
)";

constexpr const char* kSpikeScenario = R"(# steady two-job flow with a demand step at t=5
[market]
floor = 1.0
cap = 4.0
horizon = 8
algo = cfm
seed = 3

[pricing]
kind = linear_capped
slope = 1.0

[providers]
provider = cost=0.7 tau=3 restake=cyclic
provider = cost=0.9 tau=3 restake=cyclic

[jobs]
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=0
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=0
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=1
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=1
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=2
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=2
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=3
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=3
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=4
job = budget=2.0 deadline=1 min_run=1 value=0,3.0 arrival=4
job = budget=2.0 deadline=2 min_run=1 value=0,3.0 arrival=5
job = budget=2.0 deadline=2 min_run=1 value=0,3.0 arrival=5
job = budget=2.0 deadline=2 min_run=1 value=0,3.0 arrival=5
job = budget=2.0 deadline=2 min_run=1 value=0,3.0 arrival=5
)";

void run_scenario_into(const char* text, const std::string& dir) {
    Scenario sc = parse_scenario_text(text);
    MarketState st = init_market(sc.params, sc.providers, sc.jobs);
    run_market(st);
    write_run_artifacts(st, dir);
}

// ------------------------------------------------------------------------
// shared content builders: the full criteria and the reduced determinism
// bundle run the same code with different instance counts

struct RegretContent {
    std::string csv;
    int violations{0};
};

RegretContent build_regret_csv(std::uint64_t seed, int instances) {
    const Money floorp{10};
    std::ostringstream csv;
    csv << "# ccmarket regret v1\n";
    csv << "instance,matcher,r_s,r_d,bound,satisfied\n";
    RegretContent out;
    for (int i = 0; i < instances; ++i) {
        Rng rng = derive_stream(seed, StreamKind::instance, 3000 + static_cast<std::uint64_t>(i));
        const int m = static_cast<int>(rng.uniform_int(1, 8));
        const int n = static_cast<int>(rng.uniform_int(1, m + 2));
        const Money price = floorp + Money{rng.uniform_int(0, 6)};
        std::vector<PoolProvider> pool;
        for (int j = 0; j < m; ++j)
            pool.push_back({j, static_cast<int>(rng.uniform_int(1, 6)),
                            static_cast<int>(rng.uniform_int(floorp.ticks, price.ticks))});
        std::vector<int> jobs;
        for (int j = 0; j < n; ++j) jobs.push_back(static_cast<int>(rng.uniform_int(1, 6)));

        const Money bound = supply_regret_bound(m, n, price, floorp);
        const Money universal = supply_regret_universal_bound(m, price, floorp);
        for (Algo a : {Algo::gcm, Algo::gsm, Algo::cfm}) {
            RegretReport rep = regret(a, GsmFallback::reject, pool, jobs, price);
            const bool sat = rep.s_regret <= bound.ticks;
            if (a == Algo::cfm && (!sat || rep.s_regret > universal.ticks)) ++out.violations;
            csv << i << "," << algo_label(a) << "," << format_money(Money{rep.s_regret}) << ","
                << rep.d_regret << "," << format_money(bound) << "," << (sat ? 1 : 0) << "\n";
        }
    }
    out.csv = csv.str();
    return out;
}

struct TightPairContent {
    std::string csv;
    bool ok{true};
};

TightPairContent build_tight_pairs_csv() {
    std::ostringstream csv;
    csv << "# ccmarket tight pairs v1\n";
    csv << "k,gsm_feasible,cfm_feasible,d_regret,target,equal\n";
    TightPairContent out;
    for (int k = 1; k <= 3; ++k) {
        TightPairInstance inst = build_tight_pair_instance(k);
        const int gsm = run_gsm(inst.providers, inst.jobs, GsmFallback::reject).feasible_matched;
        const int cfm = run_cfm(inst.providers, inst.jobs, CfmFallback::reject).feasible_matched;
        const int d = gsm - cfm;
        const bool eq = gsm == 2 * k && d == k;
        out.ok = out.ok && eq;
        csv << k << "," << gsm << "," << cfm << "," << d << "," << k << "," << (eq ? 1 : 0) << "\n";
    }
    out.csv = csv.str();
    return out;
}

struct PairSearchContent {
    std::string csv;
    bool ok{true};
    std::string tie_exceptions;  // non-coprime pairs whose excess is 1, not 0
};

PairSearchContent build_adversary_pairs_csv() {
    const std::array<std::pair<int, int>, 5> pairs{{{2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 6}}};
    std::ostringstream csv;
    csv << "# ccmarket adversary pairs v1\n";
    csv << "tau_s,tau_l,coprime,max_infeasible_gsm,max_infeasible_cfm,excess,window_size,"
           "window_structural,per_period_ok\n";
    PairSearchContent out;
    for (auto [a, b] : pairs) {
        const Gap1Result g = gap1_window(a, b);
        const AdversarySearchResult rg = two_provider_adversary_search(a, b, Algo::gsm);
        const AdversarySearchResult rc = two_provider_adversary_search(a, b, Algo::cfm);
        const int excess = rc.max_infeasible - rg.max_infeasible;
        const bool per_period = rg.per_period_bound_ok && rc.per_period_bound_ok;
        // The O(1) bound (excess <= 1 per hyper-period) holds everywhere. The
        // sharper zero-excess expectation for non-coprime cycles does not: the
        // gap-1 window is empty, but equal-availability periods still exist,
        // and there the cheapest-feasible fallback breaks ties toward the
        // cheap provider while shortest-first ties by id. At (2,4) the
        // adversary converts exactly one such tie into an extra hit; (4,6)
        // has ties too but no schedule reaches one with budget to spare.
        out.ok = out.ok && g.matches_closed_form && per_period && excess >= 0 && excess <= 1;
        if (!g.coprime && excess != 0) {
            out.tie_exceptions += (out.tie_exceptions.empty() ? "" : " ");
            out.tie_exceptions += "(" + std::to_string(a) + "," + std::to_string(b) + ")=" +
                                  std::to_string(excess);
        }
        csv << a << "," << b << "," << (g.coprime ? 1 : 0) << "," << rg.max_infeasible << ","
            << rc.max_infeasible << "," << excess << "," << g.window.size() << ","
            << (g.matches_closed_form ? 1 : 0) << "," << (per_period ? 1 : 0) << "\n";
    }
    out.csv = csv.str();
    return out;
}

struct PeelContent {
    std::string csv;
    int pools{0};
    int gsm_disagreements{0};
    bool cfm_ok{true};
    bool gsm_sound{true};   // formula never promises more than the adversary achieves
    bool bound_ok{true};    // u_max <= m - 1 for formulas and the optima alike
};

void peel_row(std::ostringstream& csv, const std::vector<int>& taus, const char* policy,
              const PeelThresholds& p, int brute) {
    csv << "\"";
    for (std::size_t i = 0; i < taus.size(); ++i) csv << (i ? " " : "") << taus[i];
    csv << "\"," << policy << "," << p.i_star << "," << p.u_max << "," << brute << ","
        << (p.u_max == brute ? 1 : 0) << "\n";
}

PeelContent build_peel_csv() {
    std::ostringstream csv;
    csv << "# ccmarket peel thresholds v1\n";
    csv << "taus,policy,i_star,u_max_formula,u_max_adversary,agree\n";
    PeelContent out;

    std::vector<int> taus;
    auto visit = [&](auto&& self, int max_next) -> void {
        if (!taus.empty()) {
            ++out.pools;
            const int m = static_cast<int>(taus.size());
            const PeelThresholds pc = peel_thresholds_cfm(taus);
            const int bc = peel_brute_force(taus, Algo::cfm);
            const PeelThresholds pg = peel_thresholds_gsm(taus);
            const int bg = peel_brute_force(taus, Algo::gsm);
            out.cfm_ok = out.cfm_ok && pc.u_max == bc;
            if (pg.u_max != bg) ++out.gsm_disagreements;
            out.gsm_sound = out.gsm_sound && pg.u_max <= bg;
            out.bound_ok = out.bound_ok && pc.u_max <= m - 1 && bc <= m - 1 && pg.u_max <= m - 1 &&
                           bg <= m - 1;
            peel_row(csv, taus, "cfm", pc, bc);
            peel_row(csv, taus, "gsm", pg, bg);
        }
        if (taus.size() == 5) return;
        for (int t = max_next; t >= 2; --t) {
            taus.push_back(t);
            self(self, t);
            taus.pop_back();
        }
    };
    visit(visit, 6);
    out.csv = csv.str();
    return out;
}

struct ComplexityContent {
    std::string csv;
    double cfm_corr{0};
    double gcm_ratio{0};
};

ComplexityContent build_complexity_csv(std::uint64_t seed, int log2_max) {
    std::ostringstream csv;
    csv << "# ccmarket complexity v1\n";
    csv << "n,algo,ops,jobs,ops_per_job\n";
    std::vector<double> xs, ys, gcm_rates;
    for (int p = 4; p <= log2_max; ++p) {
        const int n = 1 << p;
        Rng rng = derive_stream(seed, StreamKind::instance, 10000 + static_cast<std::uint64_t>(p));

        // deep availability domain: the feasibility tree's work grows with the
        // number of distinct staking lengths
        std::vector<PoolProvider> pool;
        std::vector<int> jobs;
        for (int j = 0; j < n; ++j)
            pool.push_back({j, static_cast<int>(rng.uniform_int(1, n)),
                            static_cast<int>(rng.uniform_int(1, 256))});
        for (int j = 0; j < n; ++j) jobs.push_back(static_cast<int>(rng.uniform_int(1, n)));
        const MatchRunResult rc = run_cfm(pool, jobs);
        const double per_cfm = static_cast<double>(rc.ops) / n;
        xs.push_back(static_cast<double>(p));
        ys.push_back(per_cfm);
        csv << n << ",cfm," << rc.ops << "," << n << "," << fmt_double(per_cfm, 3) << "\n";

        // fixed tick range: bucket pops stay constant no matter the pool size
        pool.clear();
        jobs.clear();
        for (int j = 0; j < n; ++j)
            pool.push_back({j, static_cast<int>(rng.uniform_int(1, 6)),
                            static_cast<int>(rng.uniform_int(1, 8))});
        for (int j = 0; j < n; ++j) jobs.push_back(static_cast<int>(rng.uniform_int(1, 6)));
        const MatchRunResult rg = run_gcm(pool, jobs, 8);
        const double per_gcm = static_cast<double>(rg.ops) / n;
        gcm_rates.push_back(per_gcm);
        csv << n << ",gcm," << rg.ops << "," << n << "," << fmt_double(per_gcm, 3) << "\n";
    }
    ComplexityContent out;
    out.csv = csv.str();
    out.cfm_corr = pearson(xs, ys);
    out.gcm_ratio = *std::max_element(gcm_rates.begin(), gcm_rates.end()) /
                    *std::min_element(gcm_rates.begin(), gcm_rates.end());
    return out;
}

RaceConfig build_race_config(std::uint64_t seed, int index, int epsilon) {
    Rng rng = derive_stream(seed, StreamKind::race, 11000 + static_cast<std::uint64_t>(index));
    RaceConfig cfg;
    cfg.epsilon = epsilon;
    cfg.price = Money{rng.uniform_int(2, 6)};
    const int racers = static_cast<int>(rng.uniform_int(2, 4));
    const int t0 = static_cast<int>(rng.uniform_int(3, 8));
    int t_max = 0;
    for (int j = 0; j < racers; ++j) {
        // true times stay within 2 hours of each other so every quote in the
        // tolerance window wins some opponent profile on the scan grid
        const int t = t0 + static_cast<int>(rng.uniform_int(0, 2));
        cfg.racers.push_back({j, t, std::nullopt});
        t_max = std::max(t_max, t);
    }
    cfg.stake = cfg.price * (t_max + epsilon + 4) + Money{1};
    return cfg;
}

std::string build_race_scan_csv(std::uint64_t seed) {
    return race_scan_csv(best_response_scan(build_race_config(seed, 0, 1), 3));
}

std::string build_incentive_csv(std::uint64_t seed, int trials) {
    IncentiveConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    std::ostringstream csv;
    csv << "# ccmarket incentive v1\n";
    csv << "sweep,arm,mean_return_ticks\n";
    const std::vector<Money> reports{cfg.subject_cost, cfg.subject_cost + Money{1},
                                     cfg.subject_cost + Money{2}, cfg.subject_cost + Money{3}};
    for (const auto& [report, mean] : incentive_report_curve(cfg, reports))
        csv << "report," << format_money(report) << "," << fmt_double(mean, 4) << "\n";
    const std::vector<double> delays = incentive_delay_curve(cfg, 2);
    for (std::size_t d = 0; d < delays.size(); ++d)
        csv << "delay," << d << "," << fmt_double(delays[d], 4) << "\n";
    return csv.str();
}

// ------------------------------------------------------------------------
// criteria

struct Outcome {
    bool pass{false};
    std::string detail;
};

// 1: one count standard, three independent computations of it
Outcome c1_count_optimal(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        Rng rng = derive_stream(o.seed, StreamKind::instance, 1000 + static_cast<std::uint64_t>(i));
        const int m = static_cast<int>(rng.uniform_int(1, 8));
        const int n = static_cast<int>(rng.uniform_int(1, 8));
        std::vector<PoolProvider> pool;
        std::vector<int> taus;
        for (int j = 0; j < m; ++j) {
            const int tau = static_cast<int>(rng.uniform_int(1, 6));
            pool.push_back({j, tau, static_cast<int>(rng.uniform_int(1, 10))});
            taus.push_back(tau);
        }
        std::vector<int> jobs;
        for (int j = 0; j < n; ++j) jobs.push_back(static_cast<int>(rng.uniform_int(1, 7)));

        const MatchRunResult gsm = run_gsm(pool, jobs, GsmFallback::reject);
        int delta = deficiency(taus, jobs).delta;
        if (o.mutate_deficiency && delta > 0) delta -= 1;
        const int predicted = n - delta;
        const int optimum = oracle_max_feasible(taus, jobs);
        if (gsm.feasible_matched != predicted || predicted != optimum) ++bad;
    }
    const double el = elapsed_s(t0);
    return {bad == 0 && el < 30.0,
            "1000 seeded pools: matched count == n - deficiency == exhaustive optimum on " +
                std::to_string(1000 - bad) + "/1000 (" + fmt_double(el) + "s)"};
}

// 2: every arrival order of every sampled pool, plus the tight constructions
Outcome c2_arrival_order(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    const Money floorp{10};
    int bad = 0;
    std::int64_t perms = 0;
    for (int i = 0; i < 200; ++i) {
        Rng rng = derive_stream(o.seed, StreamKind::instance, 2000 + static_cast<std::uint64_t>(i));
        const int m = static_cast<int>(rng.uniform_int(1, 6));
        const int n = static_cast<int>(rng.uniform_int(1, 6));
        std::vector<PoolProvider> pool;
        for (int j = 0; j < m; ++j)
            pool.push_back({j, static_cast<int>(rng.uniform_int(1, 5)),
                            static_cast<int>(floorp.ticks + rng.uniform_int(0, 3))});
        std::vector<int> jobs;
        for (int j = 0; j < n; ++j) jobs.push_back(static_cast<int>(rng.uniform_int(1, 6)));
        std::sort(jobs.begin(), jobs.end());

        const int standard = run_gsm(pool, jobs, GsmFallback::reject).feasible_matched;
        do {
            // the count-regret bound is a single-shot claim: a job with no
            // feasible provider bounces without consuming anyone. The live
            // market instead overloads the longest provider, and that
            // consumption can cascade past floor(n/2) (e.g. taus {2,3,4,5},
            // equal costs, arrivals 2,5,4,3), so the bound is checked in
            // reject mode and the overload path is exercised elsewhere.
            const MatchRunResult r = run_cfm(pool, jobs, CfmFallback::reject);
            const int d = standard - r.feasible_matched;
            if (d < 0 || d > n / 2) ++bad;
            ++perms;
        } while (std::next_permutation(jobs.begin(), jobs.end()));
    }

    const TightPairContent tight = build_tight_pairs_csv();
    maybe_write(o, "tight_pairs.csv", tight.csv);

    const double el = elapsed_s(t0);
    return {bad == 0 && tight.ok && el < 120.0,
            "200 pools x " + std::to_string(perms) +
                " arrival orders: d-regret within floor(n/2); tight pairs k=1..3 exact (" +
                fmt_double(el) + "s)"};
}

// 3: priced pools against the cost-optimal baseline
Outcome c3_cost_regret(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    const RegretContent content = build_regret_csv(o.seed, 1000);
    maybe_write(o, "regret.csv", content.csv);
    const double el = elapsed_s(t0);
    return {content.violations == 0 && el < 30.0,
            "1000 priced pools: cfm-vs-gcm cost gap inside the branch bound and the floor(m/2) cap (" +
                fmt_double(el) + "s)"};
}

// 4: bisection against a full one-tick scan
Outcome c4_solver_grid(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    int bad = 0, load_bad = 0;
    for (int i = 0; i < 200; ++i) {
        Rng rng = derive_stream(o.seed, StreamKind::curve, 4000 + static_cast<std::uint64_t>(i));
        PricingFn f;
        f.floor = Money{rng.uniform_int(10, 30)};
        f.cap = f.floor + Money{rng.uniform_int(20, 60)};
        switch (i % 3) {
            case 0:
                f.kind = PricingKind::linear_capped;
                f.slope = Money{rng.uniform_int(2, 30)};
                break;
            case 1:
                f.kind = PricingKind::concave_power;
                f.slope = Money{rng.uniform_int(5, 40)};
                f.gamma = 0.3 + 0.69 * rng.uniform_real();
                break;
            default: {
                f.kind = PricingKind::tabulated;
                Money level = f.floor;
                f.knots = {{1.0, level}};
                for (double a : {2.0, 4.0, 8.0}) {
                    level = std::min(f.cap, level + Money{rng.uniform_int(1, 20)});
                    f.knots.emplace_back(a, level);
                }
                break;
            }
        }
        const double s_f = 1.0 + static_cast<double>(rng.uniform_int(0, 19));
        const double d0 = s_f * (0.2 + 4.0 * rng.uniform_real());
        const std::int64_t base = f.floor.ticks;
        std::function<double(Money)> demand;
        if (i % 2 == 0) {
            const double dd =
                d0 / static_cast<double>(f.cap.ticks - base) * (0.2 + 2.0 * rng.uniform_real());
            demand = [d0, dd, base](Money p) {
                return std::max(0.0, d0 - dd * static_cast<double>(p.ticks - base));
            };
        } else {
            const double decay = 0.85 + 0.14 * rng.uniform_real();
            demand = [d0, decay, base](Money p) {
                return d0 * std::pow(decay, static_cast<double>(p.ticks - base));
            };
        }

        const QuoteResult qr = solve_equilibrium_quote(f, demand, s_f);

        Money expected = f.cap;
        bool found = false;
        double prev_alpha = 0;
        for (std::int64_t t = f.floor.ticks; t <= f.cap.ticks; ++t) {
            const Money p{t};
            const double alpha = std::max(1.0, demand(p) / s_f);
            if (t > f.floor.ticks && alpha > prev_alpha + 1e-12) ++load_bad;
            prev_alpha = alpha;
            if (!found && p >= f.eval(alpha)) {
                expected = p;
                found = true;
            }
        }
        if (qr.price != expected) ++bad;
    }
    const double el = elapsed_s(t0);
    return {bad == 0 && load_bad == 0 && el < 10.0,
            "200 curve pairs: bisection quote == tick-scan quote, load non-increasing (" +
                fmt_double(el) + "s)"};
}

// 5: responsive-curve constructions must clear at the solved quote
Outcome c5_floor_clearing(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng = derive_stream(o.seed, StreamKind::curve, 5000 + static_cast<std::uint64_t>(i));
        const int s0 = static_cast<int>(rng.uniform_int(2, 10));
        const int sigma = static_cast<int>(rng.uniform_int(0, 2));
        const int k = static_cast<int>(rng.uniform_int(1, 6));
        // demand responsiveness at least S_f per crossing tick: the tolerance
        // condition alone admits curves that settle below the crossing point
        const int dd = s0 * k + static_cast<int>(rng.uniform_int(0, 3));
        PricingFn f;
        f.kind = PricingKind::linear_capped;
        f.floor = Money{rng.uniform_int(10, 25)};
        f.cap = f.floor + Money{k + 10 + rng.uniform_int(0, 10)};
        f.slope = Money{s0 + rng.uniform_int(0, 4)};
        const std::int64_t base = f.floor.ticks;
        const int excess = (sigma + dd) * k;
        auto supply = [s0, sigma, base](Money p) {
            return static_cast<double>(s0) + sigma * static_cast<double>(p.ticks - base);
        };
        auto demand = [s0, excess, dd, base](Money p) {
            return std::max(0.0, static_cast<double>(s0 + excess) -
                                     dd * static_cast<double>(p.ticks - base));
        };

        const AdmissibilityResult adm = check_admissibility(supply, demand, f, 1.0);
        if (!adm.admissible || !adm.p_adm || adm.p_adm->ticks != base + k) ++bad;

        const QuoteResult qr =
            solve_equilibrium_quote(f, std::function<double(Money)>(demand), static_cast<double>(s0));
        if (supply(qr.price) + 1e-9 < demand(qr.price)) ++bad;
    }
    const double el = elapsed_s(t0);
    return {bad == 0, "100 responsive-curve constructions: solved quote clears supply >= demand (" +
                          fmt_double(el) + "s)"};
}

// 6: exact pool arithmetic on random cohorts and the staggered-start ledger
Outcome c6_pool_balance(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
        Rng rng = derive_stream(o.seed, StreamKind::misc, 6000 + static_cast<std::uint64_t>(i));
        const int n = static_cast<int>(rng.uniform_int(1, 8));
        const Money price{rng.uniform_int(10, 40)};
        const int hours = static_cast<int>(rng.uniform_int(1, 4));
        std::vector<Assignment> ledger;
        for (int j = 0; j < n; ++j)
            ledger.push_back({j, j, 0, price, Money{rng.uniform_int(1, price.ticks)}, hours, hours, true});

        for (int h = 0; h < hours; ++h) {
            Rat sum{0};
            for (const Assignment& a : ledger) {
                const Rat pay = hourly_payment(ledger, a, h);
                if (pay < Rat{a.cost.ticks}) ++bad;
                sum += pay;
            }
            if (sum != Rat{static_cast<std::int64_t>(n) * price.ticks}) ++bad;
        }
        const SettlementResult st = settle(ledger, hours);
        for (const auto& [provider, carry] : st.carry)
            if (!(Rat{-1} < carry && carry < Rat{1})) ++bad;
        for (const auto& [period, delta] : st.treasury_delta)
            if (delta != Rat{0}) ++bad;
    }

    // staggered starts: the late joiner never shares the early pools, while
    // the early starter absorbs every later premium
    const std::vector<Assignment> pairc{{0, 0, 1, Money{10}, Money{4}, 2, 2, true},
                                        {1, 1, 2, Money{10}, Money{6}, 1, 1, true}};
    bool staggered = hourly_payment(pairc, pairc[0], 2) == Rat{9} &&
                     hourly_payment(pairc, pairc[1], 2) == Rat{10};
    const std::vector<Assignment> trio{{0, 0, 0, Money{10}, Money{8}, 3, 3, true},
                                       {1, 1, 1, Money{10}, Money{4}, 2, 2, true},
                                       {2, 2, 2, Money{10}, Money{6}, 1, 1, true}};
    staggered = staggered && hourly_payment(trio, trio[0], 2) == Rat{12} &&
                hourly_payment(trio, trio[1], 2) == Rat{9} &&
                hourly_payment(trio, trio[2], 2) == Rat{10};

    const double el = elapsed_s(t0);
    return {bad == 0 && staggered,
            "500 cohorts balance to n*P exactly, every hour >= reported cost; staggered starts "
            "settle to 12/9/10 (" +
                fmt_double(el) + "s)"};
}

// 7: hour choice against brute force, and all four monotone responses
Outcome c7_hour_choice(const VerifyOptions& o) {
    const auto t0 = Clock::now();

    auto brute_choice = [](const JobSpec& j, Money price) {
        const int cap = std::min(j.value.support(), j.deadline);
        const int hi = std::min(cap, budget_cap(j.budget, price));
        int best_w = 0;
        std::int64_t best_s = 0;
        for (int w = j.min_run; w <= hi; ++w) {
            const std::int64_t s = surplus(j.value, price, w);
            if (s > best_s || (s == best_s && w > best_w)) {
                best_w = w;
                best_s = s;
            }
        }
        return best_w;
    };

    int bad = 0;
    for (int i = 0; i < 500; ++i) {
        Rng rng = derive_stream(o.seed, StreamKind::job, 7000 + static_cast<std::uint64_t>(i));
        JobSpec j;
        const int support = static_cast<int>(rng.uniform_int(1, 8));
        if (i % 2 == 0) {
            j.value = ValueFn::power(10.0 + 70.0 * rng.uniform_real(),
                                     0.3 + 0.69 * rng.uniform_real(), support);
        } else {
            std::vector<std::int64_t> table{0};
            std::int64_t gain = rng.uniform_int(5, 30);
            for (int w = 1; w <= support; ++w) {
                table.push_back(table.back() + gain);
                gain = std::max<std::int64_t>(1, gain - rng.uniform_int(0, 5));
            }
            j.value = ValueFn::from_table(std::move(table));
        }
        j.deadline = static_cast<int>(rng.uniform_int(1, 8));
        j.min_run = static_cast<int>(rng.uniform_int(1, support + 1));
        j.budget = Money::from_units(rng.uniform_int(1, 20));
        const Money price{rng.uniform_int(5, 30)};
        const Money lower = price - Money{rng.uniform_int(1, std::min<std::int64_t>(4, price.ticks - 1))};

        if (budget_cap(j.budget, lower) < budget_cap(j.budget, price)) ++bad;
        if (j.value.marginal_count(lower) < j.value.marginal_count(price)) ++bad;
        const int w = choose_hours(j, price);
        const int wl = choose_hours(j, lower);
        if (wl < w) ++bad;
        if (w > 0 && wl == 0) ++bad;
        if (w != brute_choice(j, price) || wl != brute_choice(j, lower)) ++bad;
    }
    const double el = elapsed_s(t0);
    return {bad == 0,
            "500 users x price drops: budget caps, marginal counts, chosen hours and participation "
            "all monotone; closed form == exhaustive argmax (" +
                fmt_double(el) + "s)"};
}

// 8: exhaustive two-provider cycles
Outcome c8_multiperiod(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    const PairSearchContent content = build_adversary_pairs_csv();
    maybe_write(o, "adversary_pairs.csv", content.csv);
    const double el = elapsed_s(t0);
    std::string detail =
        "pairs (2,3)(2,4)(3,4)(3,5)(4,6): gap-1 windows structural, per-period hits <= 1, "
        "cfm-gsm excess <= 1 on every pair";
    if (!content.tie_exceptions.empty())
        detail += "; shared-factor pairs are not all zero-excess: " + content.tie_exceptions +
                  " via equal-availability fallback ties";
    return {content.ok && el < 300.0, detail + " (" + fmt_double(el) + "s)"};
}

// 9: threshold formulas against the exact adversary game
Outcome c9_peel(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    const PeelContent content = build_peel_csv();
    maybe_write(o, "peel_thresholds.csv", content.csv);
    const double el = elapsed_s(t0);
    return {content.cfm_ok && content.gsm_sound && content.bound_ok,
            std::to_string(content.pools) +
                " pools: cfm thresholds == adversary optimum everywhere; gsm short-counts on " +
                std::to_string(content.gsm_disagreements) +
                " pools (reported, never over-counts); u_max <= m-1 (" + fmt_double(el) + "s)"};
}

// 10: instrumented operation counts across four orders of magnitude
Outcome c10_complexity(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    const ComplexityContent content = build_complexity_csv(o.seed, 16);
    maybe_write(o, "complexity.csv", content.csv);
    const double el = elapsed_s(t0);
    return {content.cfm_corr >= 0.99 && content.gcm_ratio <= 2.0 && el < 120.0,
            "n=2^4..2^16: cfm ops/job vs log2(n) correlation " + fmt_double(content.cfm_corr, 4) +
                ", gcm pop-cost spread " + fmt_double(content.gcm_ratio, 2) + "x (" + fmt_double(el) +
                "s)"};
}

// 11: dominance scans and the all-lowest-quote outcome
Outcome c11_race(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        for (int eps : {0, 1, 2}) {
            RaceConfig cfg = build_race_config(o.seed, i, eps);
            const std::vector<ScanRow> rows = best_response_scan(cfg, 3);

            std::map<int, int> lowest;
            for (const ScanRow& row : rows) {
                if (!row.undominated) continue;
                const Racer& r = cfg.racers[static_cast<std::size_t>(row.racer)];
                if (row.quote < r.t_true - eps || row.quote > r.t_true + eps) ++bad;
                auto [it, fresh] = lowest.try_emplace(row.racer, row.quote);
                if (!fresh) it->second = std::min(it->second, row.quote);
            }
            if (lowest.size() != cfg.racers.size()) {
                ++bad;
                continue;
            }
            int t_min = cfg.racers.front().t_true;
            for (Racer& r : cfg.racers) {
                r.quote = lowest.at(r.id);
                t_min = std::min(t_min, r.t_true);
            }
            const RaceOutcome outcome = run_race(cfg);
            if (outcome.t_true != t_min) ++bad;
            if (std::abs(outcome.quote - outcome.t_true) > eps) ++bad;
        }
    }
    maybe_write(o, "race_scan.csv", build_race_scan_csv(o.seed));
    const double el = elapsed_s(t0);
    return {bad == 0,
            "200 configs x tolerance 0..2: undominated quotes inside the window; all-lowest play "
            "hands the win to the fastest true time (" +
                fmt_double(el) + "s)"};
}

// 12: the scripted early-vs-late ledger identity, then the population sweep
struct ScriptedRun {
    Rat total{0};
    std::array<Rat, 3> tail{};  // the subject's exact payments at hours 1..3
};

ScriptedRun run_scripted_stake(bool early) {
    MarketParams mp;
    mp.pricing.kind = PricingKind::linear_capped;
    mp.pricing.floor = Money{10};
    mp.pricing.cap = Money{40};
    mp.pricing.slope = Money{10};
    mp.horizon = 4;
    mp.algo = Algo::gsm;
    mp.gsm_fallback = GsmFallback::reject;

    std::vector<ProviderRecord> providers;
    ProviderRecord subject;
    subject.id = 0;
    subject.reported_cost = Money{4};
    subject.true_cost = Money{4};
    subject.tau0 = early ? 4 : 3;
    subject.arrival = early ? 0 : 1;
    providers.push_back(subject);
    for (int r = 1; r <= 3; ++r) {
        ProviderRecord rival;
        rival.id = r;
        rival.reported_cost = Money{6};
        rival.true_cost = Money{6};
        rival.tau0 = 2;
        rival.arrival = 1;
        providers.push_back(rival);
    }

    auto fixed_job = [](int id, int w, int arrival) {
        JobSpec j;
        j.id = id;
        j.budget = Money::from_units(w);
        j.deadline = w;
        j.min_run = w;
        std::vector<std::int64_t> table{0};
        for (int i = 1; i <= w; ++i) table.push_back(12 * i);
        j.value = ValueFn::from_table(std::move(table));
        j.arrival = arrival;
        return j;
    };

    std::vector<JobSpec> jobs;
    if (early) {
        jobs.push_back(fixed_job(0, 4, 0));  // only the subject is staked at t=0
        for (int r = 1; r <= 3; ++r) jobs.push_back(fixed_job(r, 2, 1));
    } else {
        for (int r = 0; r < 3; ++r) jobs.push_back(fixed_job(r, 2, 1));
        jobs.push_back(fixed_job(3, 3, 1));  // covers only the subject's 3 hours
    }

    MarketState st = init_market(mp, std::move(providers), std::move(jobs));
    run_market(st);

    ScriptedRun out;
    out.total = st.cumulative.at(0);
    const Assignment* own = nullptr;
    for (const Assignment& a : st.ledger)
        if (a.provider == 0) own = &a;
    for (int h = 1; h <= 3; ++h) out.tail[static_cast<std::size_t>(h - 1)] = hourly_payment(st.ledger, *own, h);
    return out;
}

Outcome c12_incentives(const VerifyOptions& o) {
    const auto t0 = Clock::now();

    const ScriptedRun early = run_scripted_stake(true);
    const ScriptedRun late = run_scripted_stake(false);
    bool scripted = early.total == Rat{37} && late.total == Rat{27} &&
                    early.total - late.total == Rat{10};
    scripted = scripted && early.tail == late.tail && early.tail[0] == Rat{17, 2} &&
               early.tail[1] == Rat{17, 2} && early.tail[2] == Rat{10};

    IncentiveConfig cfg;
    cfg.seed = o.seed;
    const IncentiveResult cmp = incentive_compare_reports(cfg, cfg.subject_cost, cfg.subject_cost + Money{3});
    const bool truthful_wins = cmp.conclusive && cmp.boot_lo > 0.0;

    if (!o.out_dir.empty()) {
        maybe_write(o, "incentive.csv", build_incentive_csv(o.seed, 300));
    }

    const double el = elapsed_s(t0);
    return {scripted && truthful_wins,
            "early-vs-late return gap equals the skipped-prefix payment exactly; truthful report "
            "beats +3 ticks, mean " +
                fmt_double(cmp.mean_a, 1) + " vs " + fmt_double(cmp.mean_b, 1) + ", 95% CI [" +
                fmt_double(cmp.boot_lo, 2) + ", " + fmt_double(cmp.boot_hi, 2) + "] (" +
                fmt_double(el) + "s)"};
}

// 13: the writers themselves, run twice and compared byte for byte
Outcome c13_determinism(const VerifyOptions& o) {
    const auto t0 = Clock::now();
    namespace fs = std::filesystem;
    const std::string base = o.out_dir.empty() ? std::string("verify-determinism") : o.out_dir;
    const std::string dir_a = base + "/det_a";
    const std::string dir_b = base + "/det_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    write_verification_bundle(o, dir_a);
    write_verification_bundle(o, dir_b);

    auto listing = [](const std::string& root) {
        std::vector<std::string> rel;
        for (const auto& entry : fs::recursive_directory_iterator(root))
            if (entry.is_regular_file())
                rel.push_back(fs::relative(entry.path(), root).generic_string());
        std::sort(rel.begin(), rel.end());
        return rel;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    const std::vector<std::string> files_a = listing(dir_a);
    const std::vector<std::string> files_b = listing(dir_b);
    bool same = files_a == files_b && !files_a.empty();
    std::size_t bytes = 0;
    if (same) {
        for (const std::string& rel : files_a) {
            const std::string a = slurp(fs::path(dir_a) / rel);
            const std::string b = slurp(fs::path(dir_b) / rel);
            if (a != b) {
                same = false;
                break;
            }
            bytes += a.size();
        }
    }
    const double el = elapsed_s(t0);
    return {same, "artifact bundle written twice: " + std::to_string(files_a.size()) +
                      " files, " + std::to_string(bytes) + " bytes byte-identical (" +
                      fmt_double(el) + "s)"};
}

}  // namespace

ComplexitySummary complexity_sweep(std::uint64_t seed, int log2_max) {
    if (log2_max < 5 || log2_max > 20)
        throw std::invalid_argument("complexity sweep: log2_max must be in [5, 20]");
    const ComplexityContent content = build_complexity_csv(seed, log2_max);
    return {content.csv, content.cfm_corr, content.gcm_ratio};
}

void write_verification_bundle(const VerifyOptions& opts, const std::string& dir) {
    std::filesystem::create_directories(dir);
    run_scenario_into(kFloorRegimeScenario, dir + "/run_floor_regime");
    run_scenario_into(kSpikeScenario, dir + "/run_spike");
    write_file(dir + "/regret.csv", build_regret_csv(opts.seed, 100).csv);
    write_file(dir + "/tight_pairs.csv", build_tight_pairs_csv().csv);
    write_file(dir + "/adversary_pairs.csv", build_adversary_pairs_csv().csv);
    write_file(dir + "/peel_thresholds.csv", build_peel_csv().csv);
    write_file(dir + "/complexity.csv", build_complexity_csv(opts.seed, 10).csv);
    write_file(dir + "/race_scan.csv", build_race_scan_csv(opts.seed));
    write_file(dir + "/incentive.csv", build_incentive_csv(opts.seed, 100));
}

const std::vector<int>& criterion_ids() {
    static const std::vector<int> ids{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    return ids;
}

std::string criterion_name(int id) {
    switch (id) {
        case 1: return "count-optimal-matching";
        case 2: return "arrival-order-regret";
        case 3: return "cost-regret-bound";
        case 4: return "quote-solver-grid-exact";
        case 5: return "admissible-floor-clearing";
        case 6: return "payout-pool-balance";
        case 7: return "hour-choice-optimality";
        case 8: return "multiperiod-two-provider";
        case 9: return "peel-thresholds";
        case 10: return "structure-complexity";
        case 11: return "race-undominated-window";
        case 12: return "report-incentives";
        case 13: return "artifact-determinism";
        default: throw std::invalid_argument("unknown criterion id " + std::to_string(id));
    }
}

bool suite_selects(const std::string& suite, int id) {
    if (suite.empty() || suite == "all") return true;
    const std::string name = criterion_name(id);
    std::istringstream in(suite);
    std::string token;
    while (std::getline(in, token, ',')) {
        const std::size_t a = token.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        const std::size_t b = token.find_last_not_of(" \t");
        token = token.substr(a, b - a + 1);
        if (token == "all" || token == std::to_string(id)) return true;
        if (name.find(token) != std::string::npos) return true;
    }
    return false;
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
    const auto t0 = Clock::now();
    Outcome oc;
    switch (id) {
        case 1: oc = c1_count_optimal(opts); break;
        case 2: oc = c2_arrival_order(opts); break;
        case 3: oc = c3_cost_regret(opts); break;
        case 4: oc = c4_solver_grid(opts); break;
        case 5: oc = c5_floor_clearing(opts); break;
        case 6: oc = c6_pool_balance(opts); break;
        case 7: oc = c7_hour_choice(opts); break;
        case 8: oc = c8_multiperiod(opts); break;
        case 9: oc = c9_peel(opts); break;
        case 10: oc = c10_complexity(opts); break;
        case 11: oc = c11_race(opts); break;
        case 12: oc = c12_incentives(opts); break;
        case 13: oc = c13_determinism(opts); break;
        default: throw std::invalid_argument("unknown criterion id " + std::to_string(id));
    }
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    r.pass = oc.pass;
    r.detail = std::move(oc.detail);
    r.seconds = elapsed_s(t0);
    return r;
}

VerificationReport run_verification(const VerifyOptions& opts) {
    VerificationReport report;
    for (int id : criterion_ids()) {
        if (!suite_selects(opts.suite, id)) continue;
        CriterionResult r = run_criterion(id, opts);
        report.all_pass = report.all_pass && r.pass;
        report.results.push_back(std::move(r));
    }
    return report;
}

}  // namespace ccm
