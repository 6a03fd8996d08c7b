#include "ccm/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "ccm/demand.hpp"

namespace ccm {

MarketState init_market(MarketParams params, std::vector<ProviderRecord> providers,
                        std::vector<JobSpec> jobs) {
    params.pricing.validate();
    if (params.horizon < 1) throw std::invalid_argument("market: horizon must be >= 1");
    if (params.floor_window < 1) throw std::invalid_argument("market: floor window must be >= 1");
    for (std::size_t i = 0; i < providers.size(); ++i) {
        auto& s = providers[i];
        if (s.id != static_cast<int>(i)) throw std::invalid_argument("market: provider ids must be 0..m-1");
        if (s.tau0 < 1) throw std::invalid_argument("market: provider tau0 must be >= 1");
        if (s.reported_cost.ticks < 0 || s.true_cost.ticks < 0)
            throw std::invalid_argument("market: provider costs must be >= 0");
        if (s.arrival < 0) throw std::invalid_argument("market: provider arrival must be >= 0");
        s.remaining = s.tau0;
        s.state = ProviderState::idle;
        s.busy_until = 0;
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto& d = jobs[i];
        if (d.id != static_cast<int>(i)) throw std::invalid_argument("market: job ids must be 0..n-1");
        if (d.budget.ticks < 0) throw std::invalid_argument("market: job budget must be >= 0");
        if (d.deadline < 1) throw std::invalid_argument("market: job deadline must be >= 1");
        if (d.min_run < 1 || d.min_run > std::min(d.value.support(), d.deadline))
            throw std::invalid_argument("market: job min_run outside [1, min(support, deadline)]");
        if (d.arrival < 0) throw std::invalid_argument("market: job arrival must be >= 0");
        d.status = JobStatus::pending;
        d.release = d.arrival;
    }
    MarketState st;
    st.params = std::move(params);
    st.providers = std::move(providers);
    st.jobs = std::move(jobs);
    st.floor = st.params.pricing.floor;
    return st;
}

int submitted_hours(const JobSpec& job, Money price) {
    if (job.kept_w) {
        // frozen hours (keep mode or residual): abstain while the current
        // price would blow the remaining budget
        int w = *job.kept_w;
        if (w < 1) return 0;
        return price.ticks * w <= job.budget.ticks ? w : 0;
    }
    return choose_hours(job, price);
}

void decay_and_restake(MarketState& s) {
    const int t = s.period;
    for (auto& p : s.providers) {
        if (!p.staked(t)) continue;
        p.remaining -= 1;
        if (p.remaining == 0 && p.restake == RestakeMode::cyclic) p.remaining = p.tau0;
    }
}

namespace {

void release_finished(MarketState& s) {
    const int t = s.period;
    for (auto& p : s.providers) {
        if (p.state == ProviderState::assigned && p.busy_until <= t)
            p.state = ProviderState::idle;
    }
    for (auto& p : s.providers) {
        if (p.state == ProviderState::assigned && p.remaining < 1)
            throw std::logic_error("market: assigned provider with zero remaining");
    }
}

}  // namespace

void advance_period(MarketState& s) {
    const int t = s.period;
    if (t >= s.params.horizon) throw std::logic_error("market: past the horizon");
    release_finished(s);

    PeriodReport rep;
    rep.period = t;

    // arrivals and residual re-entries, id order
    for (const auto& d : s.jobs) {
        if ((d.status == JobStatus::pending || d.status == JobStatus::residual) && d.release == t)
            s.queue.push_back(d.id);
    }
    // deadline expiry: pending work that can no longer start in time
    {
        std::vector<int> keep;
        for (int id : s.queue) {
            auto& d = s.jobs[static_cast<std::size_t>(id)];
            if (t >= d.arrival + d.deadline) {
                d.status = JobStatus::rejected;
                ++rep.rejected;
            } else {
                keep.push_back(id);
            }
        }
        s.queue = std::move(keep);
    }

    // step 1: floor supply and pending demand
    const std::int64_t s_f = aggregate_supply(s.providers, s.floor, t);
    rep.s_f = static_cast<int>(s_f);
    rep.d_total = static_cast<int>(s.queue.size());

    // step 2: quote
    PricingFn pf = s.params.pricing;
    pf.floor = s.floor;
    auto demand_count = [&](Money p) {
        std::int64_t n = 0;
        for (int id : s.queue)
            n += submitted_hours(s.jobs[static_cast<std::size_t>(id)], p) > 0 ? 1 : 0;
        return n;
    };
    Money price;
    if (s_f == 0) {
        // no floor supply: load is undefined when demand exists; policy is to
        // quote the cap to draw supply in, the floor on an empty market
        price = demand_count(pf.floor) > 0 ? pf.cap : pf.floor;
        rep.clamped = demand_count(pf.floor) > 0;
        rep.alpha = 1.0;
    } else {
        QuoteResult qr = solve_equilibrium_quote(pf, std::function<std::int64_t(Money)>(demand_count), s_f);
        price = qr.price;
        rep.clamped = qr.clamped;
        rep.alpha = qr.alpha.to_double();
    }
    rep.price = price;

    // step 3a: hour selection at the quote, queue order
    std::vector<int> submitters;
    std::vector<int> hours;
    for (int id : s.queue) {
        auto& d = s.jobs[static_cast<std::size_t>(id)];
        int w = submitted_hours(d, price);
        if (w > 0) {
            submitters.push_back(id);
            hours.push_back(w);
            if (!s.params.reoptimize && !d.kept_w) d.kept_w = w;  // keep mode freezes here
        }
    }
    rep.d_submitted = static_cast<int>(submitters.size());

    // step 3b: online matching over the idle active pool
    std::vector<PoolProvider> pool;
    for (auto& p : s.providers) {
        if (!p.staked(t)) { continue; }
        if (p.state == ProviderState::assigned) continue;
        p.state = p.reported_cost <= price ? ProviderState::idle : ProviderState::dormant;
        if (p.state == ProviderState::idle)
            pool.push_back({p.id, p.remaining, static_cast<int>(p.reported_cost.ticks)});
    }
    MatchRunResult mr = run_matcher(s.params.algo, s.params.gsm_fallback, pool, hours,
                                    static_cast<int>(price.ticks));

    std::optional<Money> max_cost;
    std::vector<int> matched_jobs;
    for (const auto& oc : mr.outcomes) {
        if (!oc.provider) continue;  // rejected: job stays queued
        int jid = submitters[static_cast<std::size_t>(oc.job)];
        auto& d = s.jobs[static_cast<std::size_t>(jid)];
        auto& p = s.providers[static_cast<std::size_t>(*oc.provider)];
        int worked = std::min(oc.w, p.remaining);
        Assignment a{p.id, jid, t, price, p.reported_cost, oc.w, worked, oc.feasible};
        s.ledger.push_back(a);
        p.state = ProviderState::assigned;
        p.busy_until = t + worked;
        d.budget -= price * worked;
        if (oc.feasible) {
            d.status = JobStatus::matched;
            d.kept_w = oc.w;
        } else {
            // Appendix-style rollover: the remainder re-enters the queue at the
            // period the occupying provider frees, as an all-or-nothing job
            d.status = JobStatus::residual;
            d.kept_w = oc.w - worked;
            d.min_run = oc.w - worked;
            d.release = t + worked;
            ++rep.infeasible;
        }
        ++rep.matched;
        matched_jobs.push_back(jid);
        if (!max_cost || p.reported_cost > *max_cost) max_cost = p.reported_cost;
    }
    rep.max_matched_cost = max_cost;
    {
        std::vector<int> keep;
        for (int id : s.queue)
            if (std::find(matched_jobs.begin(), matched_jobs.end(), id) == matched_jobs.end())
                keep.push_back(id);
        s.queue = std::move(keep);
    }

    // step 3c: settle this hour over the full ledger
    {
        std::vector<const Assignment*> working;
        for (const auto& a : s.ledger)
            if (working_at(a, t)) working.push_back(&a);
        std::sort(working.begin(), working.end(),
                  [](const Assignment* x, const Assignment* y) { return x->provider < y->provider; });
        Rat paid_exact{0}, charged{0};
        for (const Assignment* a : working) {
            Rat pay = hourly_payment(s.ledger, *a, t);
            paid_exact += pay;
            charged += Rat{a->price.ticks};
            Rat& cum = s.cumulative[a->provider];
            cum += pay;
            Rat& carry = s.carry[a->provider];
            Rat due = carry + pay;
            Money emitted{round_half_down(due.num, due.den)};
            carry = due - Rat{emitted.ticks};
            s.paid[a->provider] += emitted;
            s.payout_rows.push_back({t, a->provider, a->cost, pay - Rat{a->cost.ticks}, emitted, cum});
        }
        rep.treasury_delta = charged - paid_exact;
        s.treasury[t] = rep.treasury_delta;
    }

    // mark feasible jobs whose run completes within this period as finished
    for (auto& d : s.jobs) {
        if (d.status != JobStatus::matched) continue;
        for (const auto& a : s.ledger) {
            if (a.job == d.id && a.feasible && a.period + a.hours == t + 1) d.status = JobStatus::finished;
        }
    }

    // step 4: floor bookkeeping, decay, restake
    s.floor_history.push_back(max_cost.value_or(s.floor));
    if (s.params.floor_update) {
        Money nf = update_floor(s.floor_history, s.params.floor_window);
        s.floor = std::min(nf, s.params.pricing.cap);
    }
    rep.floor_after = s.floor;
    decay_and_restake(s);
    s.history.push_back(rep);
    s.period += 1;
}

void run_market(MarketState& s) {
    while (s.period < s.params.horizon) advance_period(s);
}

}  // namespace ccm
