// ccmarket command line: scenario runs, acceptance verification, adversary
// exploration, race scans and the matcher complexity bench.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccm/adversary.hpp"
#include "ccm/engine.hpp"
#include "ccm/race.hpp"
#include "ccm/report.hpp"
#include "ccm/scenario.hpp"
#include "ccm/verify.hpp"

namespace {

ccm::Algo parse_algo(const std::string& s) {
    if (s == "gcm") return ccm::Algo::gcm;
    if (s == "gsm") return ccm::Algo::gsm;
    return ccm::Algo::cfm;
}

ccm::GsmFallback parse_fallback(const std::string& s) {
    return s == "longest" ? ccm::GsmFallback::longest : ccm::GsmFallback::reject;
}

const char* algo_name(ccm::Algo a) {
    switch (a) {
        case ccm::Algo::gcm: return "gcm";
        case ccm::Algo::gsm: return "gsm";
        case ccm::Algo::cfm: return "cfm";
    }
    return "?";
}

// ---------------------------------------------------------------- run

struct RunArgs {
    std::string scenario;
    std::string algo;
    std::string fallback;
    std::uint64_t seed{0};
    bool seed_set{false};
    std::string out;
};

int cmd_run(const RunArgs& a) {
    ccm::Scenario sc = ccm::parse_scenario_file(a.scenario);
    if (!a.algo.empty()) sc.params.algo = parse_algo(a.algo);
    if (!a.fallback.empty()) sc.params.gsm_fallback = parse_fallback(a.fallback);
    if (a.seed_set) sc.params.seed = a.seed;

    ccm::MarketState st = ccm::init_market(sc.params, sc.providers, sc.jobs);
    ccm::run_market(st);

    const std::string dir = ccm::resolve_out_dir(a.out, "out/run");
    ccm::write_run_artifacts(st, dir);

    std::printf("scenario %s: %d periods, algo %s\n", a.scenario.c_str(), st.params.horizon,
                algo_name(st.params.algo));
    std::printf("%-7s %-8s %-9s %-4s %-6s %-8s %-11s %-9s\n", "period", "price", "load", "s_f",
                "queued", "matched", "infeasible", "rejected");
    for (const auto& r : st.history)
        std::printf("%-7d %-8s %-9.4f %-4d %-6d %-8d %-11d %-9d\n", r.period,
                    ccm::format_money(r.price).c_str(), r.alpha, r.s_f, r.d_total, r.matched,
                    r.infeasible, r.rejected);
    std::printf("provider returns (exact | emitted):\n");
    for (const auto& [id, exact] : st.cumulative)
        std::printf("  p%-3d %12.4f | %s\n", id, exact.to_double(),
                    ccm::format_money(st.paid.at(id)).c_str());
    ccm::Rat treasury{0};
    for (const auto& [period, delta] : st.treasury) treasury += delta;
    std::printf("treasury delta total: %.4f\n", treasury.to_double());
    std::printf("artifacts: %s\n", dir.c_str());
    return 0;
}

// ---------------------------------------------------------------- verify-bounds

struct VerifyArgs {
    std::string suite{"all"};
    std::uint64_t seed{1};
    std::string out;
    bool mutate{false};
};

int cmd_verify(const VerifyArgs& a) {
    ccm::VerifyOptions opts;
    opts.seed = a.seed;
    opts.suite = a.suite;
    opts.out_dir = ccm::resolve_out_dir(a.out, "");
    opts.mutate_deficiency = a.mutate;

    const ccm::VerificationReport report = ccm::run_verification(opts);
    int passed = 0;
    for (const auto& r : report.results) {
        std::printf("[%s] c%02d %-26s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        passed += r.pass ? 1 : 0;
    }
    std::printf("%d/%zu criteria passed\n", passed, report.results.size());
    if (!opts.out_dir.empty()) std::printf("artifacts: %s\n", opts.out_dir.c_str());
    return report.all_pass && !report.results.empty() ? 0 : 1;
}

// ---------------------------------------------------------------- adversary-search

struct AdversaryArgs {
    std::vector<int> pair;
    std::vector<int> taus;
};

void print_pair(int tau_s, int tau_l) {
    const ccm::Gap1Result g = ccm::gap1_window(tau_s, tau_l);
    std::printf("pair (%d, %d): hyper-period %d, %s\n", tau_s, tau_l, g.hyper_period,
                g.coprime ? "coprime" : "not coprime");
    std::printf("  gap-1 window: {");
    for (std::size_t i = 0; i < g.window.size(); ++i)
        std::printf("%s%d", i ? ", " : "", g.window[i]);
    std::printf("} (%zu periods)%s\n", g.window.size(),
                g.matches_closed_form ? ", matches the structural form" : " [UNEXPECTED SHAPE]");
    for (ccm::Algo algo : {ccm::Algo::gsm, ccm::Algo::cfm}) {
        const ccm::AdversarySearchResult r = ccm::two_provider_adversary_search(tau_s, tau_l, algo);
        std::printf("  %s: worst-case infeasible matches %d over the cycle (%lld states), "
                    "per-period bound %s\n",
                    algo_name(algo), r.max_infeasible, static_cast<long long>(r.states),
                    r.per_period_bound_ok ? "holds" : "VIOLATED");
    }
}

int cmd_adversary(const AdversaryArgs& a) {
    if (!a.taus.empty()) {
        const ccm::PeelThresholds pc = ccm::peel_thresholds_cfm(a.taus);
        const ccm::PeelThresholds pg = ccm::peel_thresholds_gsm(a.taus);
        const int bc = ccm::peel_brute_force(a.taus, ccm::Algo::cfm);
        const int bg = ccm::peel_brute_force(a.taus, ccm::Algo::gsm);
        std::printf("pool taus:");
        for (int t : a.taus) std::printf(" %d", t);
        std::printf("\n");
        std::printf("  cfm: i*=%d, u_max formula %d, adversary optimum %d%s\n", pc.i_star, pc.u_max,
                    bc, pc.u_max == bc ? "" : " [DISAGREES]");
        std::printf("  gsm: i*=%d, u_max formula %d, adversary optimum %d%s\n", pg.i_star, pg.u_max,
                    bg, pg.u_max == bg ? "" : " [formula under-counts: threshold saves are not "
                                              "simultaneously realizable for this pool]");
        return 0;
    }
    if (a.pair.size() == 2) {
        print_pair(a.pair[0], a.pair[1]);
        return 0;
    }
    for (auto [s, l] : {std::pair{2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 6}}) print_pair(s, l);
    return 0;
}

// ---------------------------------------------------------------- race

struct RaceArgs {
    std::string scenario;
    int epsilon{-1};
    std::string stake;
    std::string price;
    int pad{3};
    std::string out;
};

int cmd_race(const RaceArgs& a) {
    ccm::Scenario sc = ccm::parse_scenario_file(a.scenario);
    if (!sc.race) throw ccm::ScenarioError(0, "race: scenario has no [race] section");
    ccm::RaceConfig cfg = *sc.race;
    if (a.epsilon >= 0) cfg.epsilon = a.epsilon;
    if (!a.stake.empty()) cfg.stake = ccm::parse_money(a.stake);
    if (!a.price.empty()) cfg.price = ccm::parse_money(a.price);

    const std::vector<ccm::ScanRow> rows = ccm::best_response_scan(cfg, a.pad);
    const std::string dir = ccm::resolve_out_dir(a.out, "out/race");
    ccm::write_file(dir + "/race_scan.csv", ccm::race_scan_csv(rows));

    const ccm::RaceOutcome oc = ccm::run_race(cfg);
    std::printf("race: %zu racers, epsilon %d, price %s, stake %s\n", cfg.racers.size(),
                cfg.epsilon, ccm::format_money(cfg.price).c_str(),
                ccm::format_money(cfg.stake).c_str());
    for (const auto& r : cfg.racers)
        std::printf("  racer %d: true time %d, quote %d\n", r.id, r.t_true,
                    ccm::effective_quote(cfg, r));
    std::printf("winner: racer %d, quote %d, finished in %d (%s window), paid %s, stake %s\n",
                oc.winner, oc.quote, oc.t_true, oc.on_time ? "inside" : "MISSED",
                ccm::format_money(oc.paid).c_str(),
                oc.stake_returned.ticks > 0 ? "returned" : "forfeited");
    std::printf("scan: %s/race_scan.csv\n", dir.c_str());
    return 0;
}

// ---------------------------------------------------------------- complexity-bench

struct BenchArgs {
    int log2_max{16};
    std::uint64_t seed{1};
    std::string out;
};

int cmd_bench(const BenchArgs& a) {
    const ccm::ComplexitySummary s = ccm::complexity_sweep(a.seed, a.log2_max);
    const std::string dir = ccm::resolve_out_dir(a.out, "out/complexity");
    ccm::write_file(dir + "/complexity.csv", s.csv);
    std::printf("pool sizes 2^4..2^%d\n", a.log2_max);
    std::printf("cfm ops/job vs log2(n) correlation: %.4f\n", s.cfm_ops_log_corr);
    std::printf("gcm bucket pops per job spread:     %.3fx\n", s.gcm_rate_spread);
    std::printf("table: %s/complexity.csv\n", dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ccmarket: deterministic two-sided compute market"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run a scenario and write csv artifacts");
    run->add_option("scenario", run_args.scenario, "scenario config file")->required();
    run->add_option("--algo", run_args.algo, "override matcher")
        ->check(CLI::IsMember({"gcm", "gsm", "cfm"}));
    run->add_option("--gsm-fallback", run_args.fallback, "override gsm infeasible handling")
        ->check(CLI::IsMember({"reject", "longest"}));
    auto* run_seed = run->add_option("--seed", run_args.seed, "override scenario seed");
    run->add_option("--out", run_args.out, "output directory (default out/run)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify-bounds", "run the acceptance criteria suites");
    verify->add_option("--suite", verify_args.suite, "all, ids, or name fragments (comma list)");
    verify->add_option("--seed", verify_args.seed, "base seed for the suites");
    verify->add_option("--out", verify_args.out, "artifact directory (default: no files)");
    verify->add_flag("--mutate-deficiency", verify_args.mutate)->group("");  // test fixture

    AdversaryArgs adversary_args;
    auto* adversary =
        app.add_subcommand("adversary-search", "exhaustive request-stream adversaries");
    adversary->add_option("--pair", adversary_args.pair, "two staking lengths, e.g. 2,3")
        ->delimiter(',')
        ->expected(2);
    adversary->add_option("--taus", adversary_args.taus,
                          "non-increasing pool lengths for peel thresholds, e.g. 5,2,2,2")
        ->delimiter(',');

    RaceArgs race_args;
    auto* race = app.add_subcommand("race", "completion race scan and outcome");
    race->add_option("scenario", race_args.scenario, "scenario config with a [race] section")
        ->required();
    race->add_option("--epsilon", race_args.epsilon, "override tolerance");
    race->add_option("--stake", race_args.stake, "override stake, money units");
    race->add_option("--price", race_args.price, "override per-hour price, money units");
    race->add_option("--pad", race_args.pad, "scan grid padding beyond the window");
    race->add_option("--out", race_args.out, "output directory (default out/race)");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("complexity-bench", "instrumented matcher operation counts");
    bench->add_option("--log2-max", bench_args.log2_max, "largest pool size exponent")
        ->check(CLI::Range(5, 20));
    bench->add_option("--seed", bench_args.seed, "sweep seed");
    bench->add_option("--out", bench_args.out, "output directory (default out/complexity)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            run_args.seed_set = run_seed->count() > 0;
            return cmd_run(run_args);
        }
        if (*verify) return cmd_verify(verify_args);
        if (*adversary) return cmd_adversary(adversary_args);
        if (*race) return cmd_race(race_args);
        if (*bench) return cmd_bench(bench_args);
    } catch (const ccm::ScenarioError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
