#pragma once
// User value functions over integer hours. Values live on the tick*hour grid
// (integers), strictly increasing and discretely concave on their support:
//   v(0) = 0,  delta(w) = v(w) - v(w-1) > 0 and non-increasing.

#include <cstdint>
#include <vector>

#include "ccm/money.hpp"

namespace ccm {

class NotConcave : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ValueFn {
public:
    ValueFn() : v_{0} {}  // empty support: never worth submitting

    // values = v(0), v(1), ..., v(W); throws NotConcave when the table violates
    // monotonicity or discrete concavity.
    static ValueFn from_table(std::vector<std::int64_t> values);

    // power family a * w^gamma, gamma in (0,1], sampled on 1..support and
    // tabulated. Marginal gains are floored to >= 1 and forced non-increasing
    // so the table is valid by construction.
    static ValueFn power(double a, double gamma, int support);

    int support() const { return static_cast<int>(v_.size()) - 1; }
    std::int64_t value(int w) const;        // tick*hours
    std::int64_t marginal_gain(int w) const;  // delta(w), w in [1, support]

    // largest m >= 0 with delta(w) >= price for all w <= m; price 0 gives the
    // full support length. delta is non-increasing so this is a binary search.
    int marginal_count(Money price) const;

    const std::vector<std::int64_t>& table() const { return v_; }

private:
    explicit ValueFn(std::vector<std::int64_t> v) : v_(std::move(v)) {}
    std::vector<std::int64_t> v_;
};

}  // namespace ccm
