#pragma once
// Load-to-price mechanics: the load ratio (exact rational), the pricing
// function family f with f(1) = floor, the equilibrium quote solver on the
// tick grid, floor admissibility checks and the trailing-mean floor update.

#include <functional>
#include <optional>
#include <vector>

#include "ccm/money.hpp"
#include "ccm/rational.hpp"

namespace ccm {

class MonotonicityViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// alpha = 1 when D <= S_f, else the exact rational D/S_f. S_f = 0 with D > 0
// has no defined load; the caller decides policy (engine quotes the cap).
struct LoadResult {
    bool no_floor_supply{false};
    Rat alpha{1};
};
LoadResult compute_load(std::int64_t demand, std::int64_t s_f);

enum class PricingKind { linear_capped, concave_power, tabulated };

struct PricingFn {
    PricingKind kind{PricingKind::linear_capped};
    Money floor{};                 // P_f; f(1) = floor
    Money cap{};                   // b_max
    Money slope{Money{10}};        // ticks per unit load above 1
    double gamma{1.0};             // concave_power: f = floor + slope*(alpha^gamma - 1)
    std::vector<std::pair<double, Money>> knots{};  // tabulated, knots[0] = (1, floor)

    void validate() const;         // throws std::invalid_argument on a bad family
    Money eval(double alpha) const;    // rounds half-down to the tick grid, clamps to [floor, cap]
    Money eval_exact(Rat alpha) const; // linear_capped evaluates in exact integer math
    double initial_slope() const;      // f'(1+), ticks per unit load
};

struct QuoteResult {
    Money price{};
    bool clamped{false};   // no interior sign change: quote pinned to a bracket end
    Rat alpha{1};          // load at the returned price
};

// Smallest tick P in [floor, cap] with Phi(P) = P - f(max(1, D(P)/s_f)) >= 0,
// found by bisection on the tick grid (Phi is monotone when D is
// non-increasing; probes are checked and inversions raise
// MonotonicityViolation). Empirical integer-count curves get exact rational
// loads. No sign change pins the quote to a bracket end with clamped=true.
QuoteResult solve_equilibrium_quote(const PricingFn& f,
                                    const std::function<std::int64_t(Money)>& demand_count,
                                    std::int64_t s_f);
// Synthetic continuous curves (real-valued counts).
QuoteResult solve_equilibrium_quote(const PricingFn& f,
                                    const std::function<double(Money)>& demand,
                                    double s_f);

struct AdmissibilityResult {
    std::optional<Money> p_adm{};  // inf{P >= floor : S(P) >= D(P)}; nullopt = none below cap
    bool s1{false};                // D(P) - S(P) >= delta_t * (P_adm - P) on [floor, P_adm)
    bool f1{false};                // f'(1+) >= S(floor) / delta_t
    bool admissible{false};        // s1 && f1 && p_adm exists
};

// delta_t in curve units per tick. S non-decreasing, D non-increasing on the
// tick grid (violations raise MonotonicityViolation).
AdmissibilityResult check_admissibility(const std::function<double(Money)>& supply,
                                        const std::function<double(Money)>& demand,
                                        const PricingFn& f, double delta_t);

// Mean of the last `window` entries (padded by repeating the oldest when the
// history is shorter), rounded half-down to the tick. Entries are per-period
// max matched costs; zero-match periods contribute the then-prevailing floor.
Money update_floor(const std::vector<Money>& history, int window);

}  // namespace ccm
