#include "ccm/demand.hpp"

#include <algorithm>

namespace ccm {

int budget_cap(Money budget, Money price) {
    if (price.ticks < 1) throw std::invalid_argument("budget_cap: price must be >= 1 tick");
    if (budget.ticks < 0) return 0;
    return static_cast<int>(budget.ticks / price.ticks);
}

std::int64_t surplus(const ValueFn& v, Money price, int w) {
    return v.value(w) - price.ticks * static_cast<std::int64_t>(w);
}

int choose_hours(const JobSpec& job, Money price) {
    const int cap = std::min(job.value.support(), job.deadline);
    if (job.min_run < 1 || job.min_run > cap) return 0;
    const int affordable = budget_cap(job.budget, price);
    if (affordable < job.min_run) return 0;
    int h = std::min(job.value.marginal_count(price), cap);
    int w = std::min(affordable, std::max(job.min_run, h));
    if (surplus(job.value, price, w) < 0) return 0;
    return w;
}

std::int64_t aggregate_demand(const std::vector<JobSpec>& jobs, Money price) {
    std::int64_t n = 0;
    for (const auto& j : jobs) n += choose_hours(j, price) > 0 ? 1 : 0;
    return n;
}

std::int64_t total_hours(const std::vector<JobSpec>& jobs, Money price) {
    std::int64_t h = 0;
    for (const auto& j : jobs) h += choose_hours(j, price);
    return h;
}

std::int64_t aggregate_supply(const std::vector<ProviderRecord>& providers, Money price, int t) {
    std::int64_t n = 0;
    for (const auto& s : providers) n += (s.staked(t) && s.reported_cost <= price) ? 1 : 0;
    return n;
}

}  // namespace ccm
