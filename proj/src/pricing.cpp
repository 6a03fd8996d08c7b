#include "ccm/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace ccm {

LoadResult compute_load(std::int64_t demand, std::int64_t s_f) {
    if (demand < 0 || s_f < 0) throw std::invalid_argument("compute_load: negative count");
    if (demand <= s_f) return {false, Rat{1}};
    if (s_f == 0) return {true, Rat{1}};
    return {false, Rat{demand, s_f}};
}

void PricingFn::validate() const {
    if (floor.ticks < 0 || cap < floor)
        throw std::invalid_argument("pricing: need 0 <= floor <= cap");
    switch (kind) {
        case PricingKind::linear_capped:
            if (slope.ticks <= 0) throw std::invalid_argument("pricing: slope must be > 0");
            break;
        case PricingKind::concave_power:
            if (slope.ticks <= 0 || !(gamma > 0.0) || gamma > 1.0)
                throw std::invalid_argument("pricing: concave_power needs slope > 0, gamma in (0,1]");
            break;
        case PricingKind::tabulated: {
            if (knots.size() < 2 || knots.front().first != 1.0 || knots.front().second != floor)
                throw std::invalid_argument("pricing: tabulated needs knots starting at (1, floor)");
            for (std::size_t i = 1; i < knots.size(); ++i) {
                if (knots[i].first <= knots[i - 1].first || knots[i].second < knots[i - 1].second)
                    throw std::invalid_argument("pricing: tabulated knots must increase");
            }
            break;
        }
    }
}

namespace {
Money round_ticks(double x) {
    return Money{static_cast<std::int64_t>(std::ceil(x - 0.5))};  // half-down
}
}  // namespace

Money PricingFn::eval(double alpha) const {
    if (alpha < 1.0) alpha = 1.0;
    double t;
    switch (kind) {
        case PricingKind::linear_capped:
            t = static_cast<double>(floor.ticks) + static_cast<double>(slope.ticks) * (alpha - 1.0);
            break;
        case PricingKind::concave_power:
            t = static_cast<double>(floor.ticks) +
                static_cast<double>(slope.ticks) * (std::pow(alpha, gamma) - 1.0);
            break;
        case PricingKind::tabulated: {
            if (alpha >= knots.back().first) { t = static_cast<double>(knots.back().second.ticks); break; }
            std::size_t i = 1;
            while (knots[i].first < alpha) ++i;
            const auto& [a0, p0] = knots[i - 1];
            const auto& [a1, p1] = knots[i];
            double frac = (alpha - a0) / (a1 - a0);
            t = static_cast<double>(p0.ticks) + frac * static_cast<double>(p1.ticks - p0.ticks);
            break;
        }
        default: throw std::logic_error("pricing: bad kind");
    }
    return std::clamp(round_ticks(t), floor, cap);
}

Money PricingFn::eval_exact(Rat alpha) const {
    if (alpha < Rat{1}) alpha = Rat{1};
    if (kind != PricingKind::linear_capped) return eval(alpha.to_double());
    // floor + slope * (alpha - 1), exact on the tick grid
    Rat t = Rat{floor.ticks} + Rat{slope.ticks} * (alpha - Rat{1});
    return std::clamp(Money{round_half_down(t.num, t.den)}, floor, cap);
}

double PricingFn::initial_slope() const {
    switch (kind) {
        case PricingKind::linear_capped: return static_cast<double>(slope.ticks);
        case PricingKind::concave_power: return static_cast<double>(slope.ticks) * gamma;
        case PricingKind::tabulated:
            return static_cast<double>(knots[1].second.ticks - knots[0].second.ticks) /
                   (knots[1].first - knots[0].first);
    }
    throw std::logic_error("pricing: bad kind");
}

namespace {

// Shared bisection: smallest tick with Phi >= 0. alpha_price(P) must return
// f(alpha(P)) on the tick grid; demand_probe(P) is recorded for the
// monotonicity check.
template <class FAlphaPrice, class DemandProbe, class LoadProbe>
QuoteResult bisect_quote(const PricingFn& f, FAlphaPrice f_at, DemandProbe d_at, LoadProbe load_at) {
    std::vector<std::pair<Money, double>> probes;
    auto phi_nonneg = [&](Money p) {
        probes.emplace_back(p, d_at(p));
        return p >= f_at(p);
    };

    QuoteResult out;
    Money lo = f.floor, hi = f.cap;
    if (phi_nonneg(lo)) {
        out.price = lo;
        out.clamped = f_at(lo) < lo;  // Phi(floor) > 0: pinned below by the bracket
    } else if (!phi_nonneg(hi)) {
        out.price = hi;
        out.clamped = true;           // no sign change up to the cap
    } else {
        // invariant: Phi(lo) < 0 <= Phi(hi)
        while (hi.ticks - lo.ticks > 1) {
            Money mid{(lo.ticks + hi.ticks) / 2};
            if (phi_nonneg(mid)) hi = mid; else lo = mid;
        }
        out.price = hi;
    }

    std::sort(probes.begin(), probes.end());
    for (std::size_t i = 1; i < probes.size(); ++i) {
        if (probes[i].first != probes[i - 1].first && probes[i].second > probes[i - 1].second)
            throw MonotonicityViolation("demand curve increased between probes");
    }
    out.alpha = load_at(out.price);
    return out;
}

}  // namespace

QuoteResult solve_equilibrium_quote(const PricingFn& f,
                                    const std::function<std::int64_t(Money)>& demand_count,
                                    std::int64_t s_f) {
    f.validate();
    if (s_f <= 0) throw std::invalid_argument("solve_equilibrium_quote: s_f must be >= 1");
    auto load_at = [&](Money p) {
        return compute_load(demand_count(p), s_f).alpha;
    };
    auto f_at = [&](Money p) { return f.eval_exact(load_at(p)); };
    auto d_at = [&](Money p) { return static_cast<double>(demand_count(p)); };
    return bisect_quote(f, f_at, d_at, load_at);
}

QuoteResult solve_equilibrium_quote(const PricingFn& f,
                                    const std::function<double(Money)>& demand,
                                    double s_f) {
    f.validate();
    if (!(s_f > 0.0)) throw std::invalid_argument("solve_equilibrium_quote: s_f must be > 0");
    auto alpha_at = [&](Money p) { return std::max(1.0, demand(p) / s_f); };
    auto f_at = [&](Money p) { return f.eval(alpha_at(p)); };
    auto load_at = [&](Money p) {
        double a = alpha_at(p);
        // keep the report rational-friendly: denominator 1e6 grid is plenty for reports
        return Rat{static_cast<std::int64_t>(std::llround(a * 1e6)), 1000000};
    };
    return bisect_quote(f, f_at, demand, load_at);
}

AdmissibilityResult check_admissibility(const std::function<double(Money)>& supply,
                                        const std::function<double(Money)>& demand,
                                        const PricingFn& f, double delta_t) {
    f.validate();
    if (!(delta_t > 0.0)) throw std::invalid_argument("check_admissibility: delta_t must be > 0");
    AdmissibilityResult out;
    double prev_s = -1e300, prev_d = 1e300;
    for (std::int64_t t = f.floor.ticks; t <= f.cap.ticks; ++t) {
        Money p{t};
        double s = supply(p), d = demand(p);
        if (s < prev_s - 1e-9 || d > prev_d + 1e-9)
            throw MonotonicityViolation("supply must be non-decreasing and demand non-increasing");
        prev_s = s; prev_d = d;
        if (!out.p_adm && s >= d) out.p_adm = p;
    }
    if (out.p_adm) {
        out.s1 = true;
        for (std::int64_t t = f.floor.ticks; t < out.p_adm->ticks; ++t) {
            Money p{t};
            double gap = demand(p) - supply(p);
            if (gap + 1e-9 < delta_t * static_cast<double>(out.p_adm->ticks - t)) { out.s1 = false; break; }
        }
        out.f1 = f.initial_slope() + 1e-9 >= supply(f.floor) / delta_t;
    }
    out.admissible = out.p_adm.has_value() && out.s1 && out.f1;
    return out;
}

Money update_floor(const std::vector<Money>& history, int window) {
    if (window < 1) throw std::invalid_argument("update_floor: window must be >= 1");
    if (history.empty()) throw std::invalid_argument("update_floor: empty history");
    std::int64_t sum = 0;
    for (int i = 0; i < window; ++i) {
        // last `window` entries, padding by repeating the oldest
        std::int64_t idx = static_cast<std::int64_t>(history.size()) - window + i;
        if (idx < 0) idx = 0;
        sum += history[static_cast<std::size_t>(idx)].ticks;
    }
    return Money{round_half_down(sum, window)};
}

}  // namespace ccm
