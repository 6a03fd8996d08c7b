#include "ccm/value_fn.hpp"

#include <cmath>

namespace ccm {

ValueFn ValueFn::from_table(std::vector<std::int64_t> values) {
    if (values.empty() || values[0] != 0)
        throw NotConcave("value table must start at v(0) = 0");
    std::int64_t prev_delta = 0;
    for (std::size_t w = 1; w < values.size(); ++w) {
        std::int64_t d = values[w] - values[w - 1];
        if (d <= 0)
            throw NotConcave("value table not strictly increasing at w=" + std::to_string(w));
        if (w > 1 && d > prev_delta)
            throw NotConcave("value table not concave at w=" + std::to_string(w));
        prev_delta = d;
    }
    return ValueFn(std::move(values));
}

ValueFn ValueFn::power(double a, double gamma, int support) {
    if (!(a > 0.0) || !(gamma > 0.0) || gamma > 1.0 || support < 1)
        throw std::invalid_argument("ValueFn::power: need a > 0, gamma in (0,1], support >= 1");
    std::vector<std::int64_t> v(static_cast<std::size_t>(support) + 1, 0);
    std::int64_t prev_delta = INT64_MAX;
    for (int w = 1; w <= support; ++w) {
        double exact = a * (std::pow(w, gamma) - std::pow(w - 1, gamma));
        std::int64_t d = static_cast<std::int64_t>(std::floor(exact));
        if (d < 1) d = 1;
        if (d > prev_delta) d = prev_delta;
        prev_delta = d;
        v[w] = v[w - 1] + d;
    }
    return ValueFn(std::move(v));
}

std::int64_t ValueFn::value(int w) const {
    if (w < 0 || w > support())
        throw std::out_of_range("ValueFn::value: w outside [0, support]");
    return v_[static_cast<std::size_t>(w)];
}

std::int64_t ValueFn::marginal_gain(int w) const {
    if (w < 1 || w > support())
        throw std::out_of_range("ValueFn::marginal_gain: w outside [1, support]");
    return v_[static_cast<std::size_t>(w)] - v_[static_cast<std::size_t>(w) - 1];
}

int ValueFn::marginal_count(Money price) const {
    int lo = 0, hi = support();
    // invariant: delta(w) >= price for all w <= lo; search the boundary
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (marginal_gain(mid) >= price.ticks) lo = mid; else hi = mid - 1;
    }
    return lo;
}

}  // namespace ccm
