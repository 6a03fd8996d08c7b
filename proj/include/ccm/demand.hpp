#pragma once
// Single-user hour selection at a posted price, and the population aggregates
// built from it. Surpluses are exact integers on the tick*hour grid.

#include <vector>

#include "ccm/money.hpp"
#include "ccm/types.hpp"

namespace ccm {

// floor(B / P); price must be >= 1 tick
int budget_cap(Money budget, Money price);

// v(w) - P*w, exact
std::int64_t surplus(const ValueFn& v, Money price, int w);

// The closed-form choice: 0 when floor(B/P) < min_run or the best surplus is
// negative (zero surplus still submits, tie-break toward entry), otherwise
//   min{ floor(B/P), max{ min_run, h(P) } }
// with h(P) the marginal count capped at min(support, deadline). Equals the
// exhaustive argmax over {min_run..min(floor(B/P), deadline, support)} on
// every discretely concave value table (the argmax tie-break is the largest
// maximizer); tests enforce the equivalence against the brute-force oracle.
int choose_hours(const JobSpec& job, Money price);

// submitter count at the price: |{d : choose_hours(d, P) > 0}|
std::int64_t aggregate_demand(const std::vector<JobSpec>& jobs, Money price);

// total chosen hours H(P) = sum of choose_hours
std::int64_t total_hours(const std::vector<JobSpec>& jobs, Money price);

// |{s staked at t : reported cost <= P}|
std::int64_t aggregate_supply(const std::vector<ProviderRecord>& providers, Money price, int t);

}  // namespace ccm
