#include "doctest.h"

#include "ccm/demand.hpp"
#include "ccm/rng.hpp"

using namespace ccm;

namespace {

JobSpec make_job(std::vector<std::int64_t> table, int deadline, int min_run, Money budget) {
    JobSpec j;
    j.value = ValueFn::from_table(std::move(table));
    j.deadline = deadline;
    j.min_run = min_run;
    j.budget = budget;
    return j;
}

// exhaustive argmax over {0} + [min_run, min(support, deadline, floor(B/P))],
// largest maximizer, zero-surplus entry preferred over staying out
int brute_hours(const JobSpec& j, Money price) {
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
}

}  // namespace

TEST_CASE("budget_cap floors and guards") {
    CHECK(budget_cap(Money::from_units(4), Money{10}) == 4);
    CHECK(budget_cap(Money{39}, Money{10}) == 3);
    CHECK(budget_cap(Money{0}, Money{10}) == 0);
    CHECK(budget_cap(Money{-5}, Money{10}) == 0);
    CHECK_THROWS_AS(budget_cap(Money{10}, Money{0}), std::invalid_argument);
}

TEST_CASE("choose_hours closed form") {
    // deltas 10 8 6 4
    const std::vector<std::int64_t> tbl{0, 10, 18, 24, 28};

    // interior optimum: stop where the marginal drops below the price
    CHECK(choose_hours(make_job(tbl, 4, 1, Money{400}), Money{7}) == 2);
    // deadline binds
    CHECK(choose_hours(make_job(tbl, 1, 1, Money{400}), Money{7}) == 1);
    // budget binds
    CHECK(choose_hours(make_job(tbl, 4, 1, Money{14}), Money{7}) == 2);
    CHECK(choose_hours(make_job(tbl, 4, 1, Money{7}), Money{7}) == 1);
    // min_run pushes past the marginal stop while surplus stays >= 0
    CHECK(choose_hours(make_job(tbl, 4, 3, Money{400}), Money{7}) == 3);  // surplus 24-21 > 0
    // min_run infeasible within [1, min(support, deadline)]
    CHECK(choose_hours(make_job(tbl, 2, 3, Money{400}), Money{7}) == 0);
    // unaffordable min_run
    CHECK(choose_hours(make_job(tbl, 4, 3, Money{20}), Money{7}) == 0);
    // negative surplus at the chosen w: stay out
    CHECK(choose_hours(make_job(tbl, 4, 4, Money{400}), Money{9}) == 0);  // v(4)=28 < 36
    // zero surplus still submits
    CHECK(choose_hours(make_job({0, 10}, 1, 1, Money{400}), Money{10}) == 1);
    // price above every marginal: out
    CHECK(choose_hours(make_job(tbl, 4, 1, Money{400}), Money{11}) == 0);
}

TEST_CASE("choose_hours equals the exhaustive argmax") {
    for (int i = 0; i < 200; ++i) {
        Rng rng = derive_stream(11, StreamKind::job, static_cast<std::uint64_t>(i));
        const int support = static_cast<int>(rng.uniform_int(1, 7));
        JobSpec j;
        if (i % 2 == 0) {
            j.value = ValueFn::power(10.0 + 60.0 * rng.uniform_real(),
                                     0.3 + 0.69 * rng.uniform_real(), support);
        } else {
            std::vector<std::int64_t> tbl{0};
            std::int64_t gain = rng.uniform_int(4, 25);
            for (int w = 1; w <= support; ++w) {
                tbl.push_back(tbl.back() + gain);
                gain = std::max<std::int64_t>(1, gain - rng.uniform_int(0, 4));
            }
            j.value = ValueFn::from_table(std::move(tbl));
        }
        j.deadline = static_cast<int>(rng.uniform_int(1, 7));
        j.min_run = static_cast<int>(rng.uniform_int(1, support + 1));
        j.budget = Money::from_units(rng.uniform_int(0, 15));
        const Money price{rng.uniform_int(2, 28)};
        CAPTURE(i);
        CHECK(choose_hours(j, price) == brute_hours(j, price));
    }
}

TEST_CASE("price drops move every response weakly up") {
    const std::vector<std::int64_t> tbl{0, 12, 22, 30, 36};
    for (std::int64_t p = 3; p <= 13; ++p) {
        const JobSpec j = make_job(tbl, 4, 1, Money{45});
        const int w_hi = choose_hours(j, Money{p});
        const int w_lo = choose_hours(j, Money{p - 1});
        CHECK(w_lo >= w_hi);
        CHECK(budget_cap(j.budget, Money{p - 1}) >= budget_cap(j.budget, Money{p}));
        CHECK(j.value.marginal_count(Money{p - 1}) >= j.value.marginal_count(Money{p}));
        if (w_hi > 0) CHECK(w_lo > 0);  // participation is monotone too
    }
}

TEST_CASE("population aggregates") {
    std::vector<JobSpec> jobs{make_job({0, 10, 18}, 2, 1, Money{100}),
                              make_job({0, 4}, 1, 1, Money{100}),
                              make_job({0, 10}, 1, 1, Money{3})};
    // at P=5: job0 takes 2, job1 out (4 < 5), job2 can't afford a single hour
    CHECK(aggregate_demand(jobs, Money{5}) == 1);
    CHECK(total_hours(jobs, Money{5}) == 2);

    std::vector<ProviderRecord> provs(3);
    provs[0].reported_cost = Money{4};
    provs[0].tau0 = 2;
    provs[0].remaining = 2;
    provs[1].reported_cost = Money{6};
    provs[1].remaining = 1;
    provs[2].reported_cost = Money{4};
    provs[2].remaining = 3;
    provs[2].arrival = 5;
    CHECK(aggregate_supply(provs, Money{5}, 0) == 1);   // only p0: p1 too dear, p2 not arrived
    CHECK(aggregate_supply(provs, Money{6}, 0) == 2);
    CHECK(aggregate_supply(provs, Money{5}, 5) == 2);   // p2 joins at its arrival
}
