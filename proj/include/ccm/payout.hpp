#pragma once
// Pool-sharing settlement. A provider matched at period t earns, for every
// hour h it works, its reported cost plus an equal share of the premium pool
//   Pi_{>=h} = sum of (price - cost) over providers working at h whose match
//              started at or after t (prices locked at each match period).
// All arithmetic is exact rational; ticks are emitted per hour with
// half-down rounding and a per-provider sub-tick carry.

#include <map>
#include <vector>

#include "ccm/rational.hpp"
#include "ccm/types.hpp"

namespace ccm {

inline bool working_at(const Assignment& a, int h) {
    return a.period <= h && h < a.period + a.hours;
}

// Exact hourly payment for assignment `a` at hour h (must be working then).
Rat hourly_payment(const std::vector<Assignment>& ledger, const Assignment& a, int h);

// Exact cumulative return of a provider over all its assignments.
Rat total_return_exact(const std::vector<Assignment>& ledger, int provider);

struct SettlementResult {
    std::vector<PayoutRow> rows;           // ordered by (period, provider)
    std::map<int, Rat> total_exact;        // provider -> exact return
    std::map<int, Money> total_paid;       // provider -> emitted ticks
    std::map<int, Rat> carry;              // final sub-tick remainder, |carry| < 1 tick
    std::map<int, Rat> treasury_delta;     // period -> user payments minus exact payouts
};

// Pure fold over the ledger for hours [0, horizon).
SettlementResult settle(const std::vector<Assignment>& ledger, int horizon);

}  // namespace ccm
