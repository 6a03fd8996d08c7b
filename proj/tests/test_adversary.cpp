// regret accounting, worst-case constructions, adversary searches, incentives
#include <numeric>

#include "ccm/adversary.hpp"
#include "doctest.h"

using namespace ccm;

// ---------------------------------------------------------------------------

TEST_CASE("supply regret bound branches") {
    Money p{20}, f{10};
    CHECK(supply_regret_bound(4, 5, p, f) == Money{0});   // saturated: n >= m
    CHECK(supply_regret_bound(4, 4, p, f) == Money{0});
    CHECK(supply_regret_bound(4, 2, p, f) == Money{20});  // sparse: gap * n
    CHECK(supply_regret_bound(5, 2, p, f) == Money{20});  // 2n == 4 <= 5 still sparse
    CHECK(supply_regret_bound(5, 3, p, f) == Money{20});  // middle: gap * (m - n)
    CHECK(supply_regret_bound(6, 5, p, f) == Money{10});
    CHECK(supply_regret_bound(9, 5, p, f) == Money{0} + Money{40});
    CHECK(supply_regret_bound(4, 2, f, f) == Money{0});   // price at the floor
    CHECK(supply_regret_universal_bound(5, p, f) == Money{20});
    CHECK(supply_regret_universal_bound(6, p, f) == Money{30});
}

TEST_CASE("regret on the two-provider trap") {
    // short-expensive / long-cheap pair: easy job then threshold job
    std::vector<PoolProvider> pool{{0, 1, 5}, {1, 2, 3}};
    std::vector<int> jobs{1, 2};
    Money price{10};

    RegretReport cfm = regret(Algo::cfm, GsmFallback::reject, pool, jobs, price);
    CHECK(cfm.d_regret == 1);   // cheapest-feasible burns the long provider
    CHECK(cfm.s_regret == 0);   // same two providers matched, cost total ties
    CHECK(cfm.feasible == 1);
    CHECK(cfm.infeasible == 1);

    RegretReport gsm = regret(Algo::gsm, GsmFallback::reject, pool, jobs, price);
    CHECK(gsm.d_regret == 0);   // shortest-feasible is count-optimal
    CHECK(gsm.feasible == 2);
    CHECK(gsm.s_regret >= 0);

    RegretReport gcm = regret(Algo::gcm, GsmFallback::reject, pool, jobs, price);
    CHECK(gcm.s_regret == 0);   // cost-optimal by definition
}

TEST_CASE("tight pair instances scale the count gap") {
    for (int k = 1; k <= 3; ++k) {
        CAPTURE(k);
        TightPairInstance inst = build_tight_pair_instance(k);
        REQUIRE(inst.providers.size() == static_cast<std::size_t>(2 * k));
        REQUIRE(inst.jobs.size() == static_cast<std::size_t>(2 * k));
        // within each pair the longer provider is cheaper
        for (int j = 0; j < k; ++j) {
            CHECK(inst.providers[2 * j].tau + 1 == inst.providers[2 * j + 1].tau);
            CHECK(inst.providers[2 * j].cost > inst.providers[2 * j + 1].cost);
        }
        RegretReport r = regret(Algo::cfm, GsmFallback::reject, inst.providers, inst.jobs, Money{100});
        CHECK(r.d_regret == k);
    }
    CHECK_THROWS_AS(build_tight_pair_instance(0), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST_CASE("cyclic availability residues") {
    CHECK(cyclic_tau(3, 0) == 3);
    CHECK(cyclic_tau(3, 1) == 2);
    CHECK(cyclic_tau(3, 2) == 1);
    CHECK(cyclic_tau(3, 3) == 3);
    CHECK(cyclic_tau(1, 7) == 1);
    CHECK_THROWS_AS(cyclic_tau(0, 1), std::invalid_argument);
}

TEST_CASE("gap-one windows over the hyper-period") {
    SUBCASE("coprime cycles give one block of length tau_short") {
        Gap1Result g = gap1_window(2, 3);
        CHECK(g.hyper_period == 6);
        CHECK(g.coprime);
        CHECK(g.window == std::vector<int>{0, 1});
        CHECK(g.matches_closed_form);

        Gap1Result h = gap1_window(3, 4);
        CHECK(h.hyper_period == 12);
        CHECK(h.window == std::vector<int>{0, 1, 2});
        CHECK(h.matches_closed_form);
    }
    SUBCASE("shared factor kills the window") {
        Gap1Result g = gap1_window(2, 4);
        CHECK(g.hyper_period == 4);
        CHECK_FALSE(g.coprime);
        CHECK(g.window.empty());
        CHECK(g.matches_closed_form);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(gap1_window(3, 3), std::invalid_argument);
        CHECK_THROWS_AS(gap1_window(1, 3), std::invalid_argument);
    }
}

TEST_CASE("constrained adversary search stays within one hit per period") {
    auto cfm23 = two_provider_adversary_search(2, 3, Algo::cfm);
    auto gsm23 = two_provider_adversary_search(2, 3, Algo::gsm);
    CHECK(cfm23.per_period_bound_ok);
    CHECK(gsm23.per_period_bound_ok);
    CHECK(cfm23.states > 0);
    // coprime pair: the greedy rule gives up at most one extra infeasible hit
    CHECK(cfm23.max_infeasible - gsm23.max_infeasible <= 1);
    CHECK(cfm23.max_infeasible >= gsm23.max_infeasible);

    // no gap-one window under a shared factor, yet the cost-oriented rule can
    // still give up one extra hit at (2,4): after a hit on the short provider
    // both providers free simultaneously into an equal-availability period
    // with full budget, and the overload fallback breaks the tie toward the
    // cheap provider (shortest-first ties by id and never reaches this state,
    // since any hit it allows keeps the long provider busy past the tie).
    auto cfm24 = two_provider_adversary_search(2, 4, Algo::cfm);
    auto gsm24 = two_provider_adversary_search(2, 4, Algo::gsm);
    CHECK(gsm24.max_infeasible == 1);
    CHECK(cfm24.max_infeasible == 2);

    // at (4,6) equal-availability periods exist too, but no legal schedule
    // converts one, and the excess really is zero
    auto cfm46 = two_provider_adversary_search(4, 6, Algo::cfm);
    auto gsm46 = two_provider_adversary_search(4, 6, Algo::gsm);
    CHECK(cfm46.max_infeasible == gsm46.max_infeasible);

    CHECK_THROWS_AS(two_provider_adversary_search(3, 3, Algo::cfm), std::invalid_argument);
    CHECK_THROWS_AS(two_provider_adversary_search(2, 25, Algo::cfm), std::invalid_argument);
    CHECK_THROWS_AS(two_provider_adversary_search(2, 3, Algo::gcm), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST_CASE("peel thresholds") {
    SUBCASE("hand case, cheapest-feasible") {
        PeelThresholds pt = peel_thresholds_cfm({4, 3, 2});
        CHECK(pt.saves == std::vector<std::int64_t>{3, 5, 6});
        CHECK(pt.i_star == 1);
        CHECK(pt.u_max == 2);
        CHECK(pt.u_max == peel_brute_force({4, 3, 2}, Algo::cfm));
    }
    SUBCASE("single provider can never be overloaded") {
        CHECK(peel_thresholds_cfm({3}).u_max == 0);
        CHECK(peel_brute_force({3}, Algo::cfm) == 0);
    }
    SUBCASE("cfm formula is exact on small pools") {
        const std::vector<std::vector<int>> pools{
            {2}, {3, 2}, {4, 4, 2}, {5, 2, 2, 2}, {6, 5, 3, 2}, {4, 4, 4, 4, 4}};
        for (const auto& taus : pools) {
            CAPTURE(taus.size());
            CHECK(peel_thresholds_cfm(taus).u_max == peel_brute_force(taus, Algo::cfm));
        }
    }
    SUBCASE("gsm formula is a sound lower bound but not tight") {
        // shortest-feasible dodges the peel schedule here: the formula says no
        // provider can be overloaded, exhaustive play overloads two
        PeelThresholds pt = peel_thresholds_gsm({5, 2, 2, 2});
        CHECK(pt.u_max == 0);
        int brute = peel_brute_force({5, 2, 2, 2}, Algo::gsm);
        CHECK(brute == 2);
        CHECK(pt.u_max <= brute);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(peel_thresholds_cfm({}), std::invalid_argument);
        CHECK_THROWS_AS(peel_thresholds_cfm({2, 3}), std::invalid_argument);
        CHECK_THROWS_AS(peel_thresholds_cfm({3, 1}), std::invalid_argument);
        CHECK_THROWS_AS(peel_brute_force({3, 2}, Algo::gcm), std::invalid_argument);
    }
}

// ---------------------------------------------------------------------------

TEST_CASE("incentive experiments are deterministic") {
    IncentiveConfig cfg;
    cfg.rivals = 3;
    cfg.horizon = 4;
    cfg.trials = 30;
    cfg.seed = 11;

    IncentiveResult a = incentive_compare_reports(cfg, cfg.subject_cost, Money{9});
    IncentiveResult b = incentive_compare_reports(cfg, cfg.subject_cost, Money{9});
    CHECK(a.mean_a == b.mean_a);
    CHECK(a.mean_b == b.mean_b);
    CHECK(a.boot_lo == b.boot_lo);
    CHECK(a.boot_hi == b.boot_hi);
    CHECK(a.boot_lo <= a.boot_hi);

    auto curve = incentive_report_curve(cfg, {Money{6}, Money{9}});
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].first == Money{6});
    CHECK(curve[0].second == doctest::Approx(a.mean_a));

    auto delays = incentive_delay_curve(cfg, 2);
    CHECK(delays.size() == 3);
    CHECK_THROWS_AS(incentive_compare_delay(cfg, 0), std::invalid_argument);
    CHECK_THROWS_AS(incentive_delay_curve(cfg, cfg.subject_tau), std::invalid_argument);
}

TEST_CASE("monopoly over-reporting pays") {
    auto [truthful, inflated] = monopoly_over_report(Money{6}, Money::from_units(2));
    CHECK(truthful > 0.0);
    CHECK(inflated > truthful);
}
