#pragma once
// Integer tick money. 1 tick = 0.1 currency units; all prices, costs, budgets
// and payouts in the engine live on this grid. No floating point money.

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>

namespace ccm {

inline constexpr std::int64_t kTicksPerUnit = 10;

struct Money {
    std::int64_t ticks{0};

    constexpr Money() = default;
    constexpr explicit Money(std::int64_t t) : ticks(t) {}

    static constexpr Money from_ticks(std::int64_t t) { return Money{t}; }
    static constexpr Money from_units(std::int64_t u) { return Money{u * kTicksPerUnit}; }

    friend constexpr auto operator<=>(Money a, Money b) = default;
    friend constexpr Money operator+(Money a, Money b) { return Money{a.ticks + b.ticks}; }
    friend constexpr Money operator-(Money a, Money b) { return Money{a.ticks - b.ticks}; }
    friend constexpr Money operator*(Money a, std::int64_t k) { return Money{a.ticks * k}; }
    friend constexpr Money operator*(std::int64_t k, Money a) { return Money{a.ticks * k}; }
    Money& operator+=(Money b) { ticks += b.ticks; return *this; }
    Money& operator-=(Money b) { ticks -= b.ticks; return *this; }
};

// "12.3" for 123 ticks; always exactly one fractional digit.
std::string format_money(Money m);

// Parses a decimal literal with at most one fractional digit. Anything finer
// than the tick grid is rejected (throws std::invalid_argument).
Money parse_money(const std::string& text);

// round-half-down of num/den ticks, den > 0. 11.5 -> 11, 11.6 -> 12.
std::int64_t round_half_down(std::int64_t num, std::int64_t den);

}  // namespace ccm
