#include "ccm/money.hpp"

#include <cctype>
#include <cstdlib>

namespace ccm {

std::string format_money(Money m) {
    std::int64_t t = m.ticks;
    const char* sign = "";
    if (t < 0) { sign = "-"; t = -t; }
    return sign + std::to_string(t / kTicksPerUnit) + "." + std::to_string(t % kTicksPerUnit);
}

Money parse_money(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty money literal");
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '-' || text[i] == '+') { neg = (text[i] == '-'); ++i; }
    std::int64_t whole = 0;
    bool any = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        whole = whole * 10 + (text[i] - '0');
        any = true;
    }
    std::int64_t frac = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("money literal '" + text + "': missing fractional digit");
        frac = text[i] - '0';
        ++i;
        // extra digits are only allowed if they are all zero (still on the grid)
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            if (text[i] != '0')
                throw std::invalid_argument("money literal '" + text + "': finer than 0.1 tick grid");
        }
        any = true;
    }
    if (!any || i != text.size())
        throw std::invalid_argument("bad money literal '" + text + "'");
    std::int64_t ticks = whole * kTicksPerUnit + frac;
    return Money{neg ? -ticks : ticks};
}

std::int64_t round_half_down(std::int64_t num, std::int64_t den) {
    // floor((2*num + den - 1) / (2*den)) for positive values; mirrored for negative.
    if (den <= 0) throw std::invalid_argument("round_half_down: den must be > 0");
    if (num >= 0) {
        return (2 * num + den - 1) / (2 * den);
    }
    // number-line semantics: on a tie pick the smaller value, so -11.5 -> -12,
    // which is round-half-up on the magnitude.
    std::int64_t n = -num;
    std::int64_t up = (2 * n + den) / (2 * den);  // half rounds up (away from zero)
    return -up;
}

}  // namespace ccm
