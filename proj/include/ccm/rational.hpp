#pragma once
// Exact rational arithmetic for pool-sharing payouts and treasury accounting.
// Values stay tiny (numerators are tick sums, denominators lcm of cohort
// sizes), so int64 with eager normalization is plenty.

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace ccm {

struct Rat {
    std::int64_t num{0};
    std::int64_t den{1};

    constexpr Rat() = default;
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
    explicit Rat(std::int64_t n) : num(n), den(1) {}

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rat operator+(Rat a, Rat b) { return Rat{a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rat operator-(Rat a, Rat b) { return Rat{a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rat operator*(Rat a, Rat b) { return Rat{a.num * b.num, a.den * b.den}; }
    friend Rat operator/(Rat a, Rat b) {
        if (b.num == 0) throw std::domain_error("Rat: divide by zero");
        return Rat{a.num * b.den, a.den * b.num};
    }
    Rat& operator+=(Rat b) { *this = *this + b; return *this; }
    Rat& operator-=(Rat b) { *this = *this - b; return *this; }

    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
    friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(Rat a, Rat b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(Rat a, Rat b) { return b < a; }
    friend bool operator>=(Rat a, Rat b) { return b <= a; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

}  // namespace ccm
