#include "ccm/payout.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccm {

Rat hourly_payment(const std::vector<Assignment>& ledger, const Assignment& a, int h) {
    if (!working_at(a, h)) throw std::invalid_argument("hourly_payment: not working at h");
    std::int64_t premium = 0;
    std::int64_t members = 0;
    for (const auto& b : ledger) {
        if (!working_at(b, h) || b.period < a.period) continue;
        ++members;
        premium += (b.price - b.cost).ticks;
    }
    // the provider itself is always in its own cohort, so members >= 1
    return Rat{a.cost.ticks} + Rat{premium, members};
}

Rat total_return_exact(const std::vector<Assignment>& ledger, int provider) {
    Rat total{0};
    for (const auto& a : ledger) {
        if (a.provider != provider) continue;
        for (int h = a.period; h < a.period + a.hours; ++h)
            total += hourly_payment(ledger, a, h);
    }
    return total;
}

SettlementResult settle(const std::vector<Assignment>& ledger, int horizon) {
    SettlementResult out;
    for (int h = 0; h < horizon; ++h) {
        // working set in provider-id order keeps the row stream deterministic
        std::vector<const Assignment*> working;
        for (const auto& a : ledger)
            if (working_at(a, h)) working.push_back(&a);
        std::sort(working.begin(), working.end(),
                  [](const Assignment* x, const Assignment* y) { return x->provider < y->provider; });

        Rat paid_exact{0};
        Rat charged{0};
        for (const Assignment* a : working) {
            Rat pay = hourly_payment(ledger, *a, h);
            paid_exact += pay;
            charged += Rat{a->price.ticks};

            Rat& cum = out.total_exact[a->provider];
            cum += pay;
            Rat& carry = out.carry[a->provider];
            Rat due = carry + pay;
            Money emitted{round_half_down(due.num, due.den)};
            carry = due - Rat{emitted.ticks};
            out.total_paid[a->provider] += emitted;

            out.rows.push_back({h, a->provider, a->cost, pay - Rat{a->cost.ticks}, emitted, cum});
        }
        if (!working.empty()) out.treasury_delta[h] = charged - paid_exact;
    }
    return out;
}

}  // namespace ccm
