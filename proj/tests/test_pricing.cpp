#include "doctest.h"

#include <functional>

#include "ccm/pricing.hpp"

using namespace ccm;

namespace {

PricingFn linear(std::int64_t floor, std::int64_t cap, std::int64_t slope) {
    PricingFn f;
    f.kind = PricingKind::linear_capped;
    f.floor = Money{floor};
    f.cap = Money{cap};
    f.slope = Money{slope};
    return f;
}

}  // namespace

TEST_CASE("linear family evaluates on the tick grid with half-down rounding") {
    PricingFn f = linear(10, 40, 10);
    CHECK(f.eval(1.0) == Money{10});
    CHECK(f.eval(2.0) == Money{20});
    CHECK(f.eval(1.05) == Money{10});   // 10.5 rounds down on the tie
    CHECK(f.eval(1.06) == Money{11});
    CHECK(f.eval(9.0) == Money{40});    // clamped at the cap
    CHECK(f.eval(0.5) == Money{10});    // never below the floor
    CHECK(f.eval_exact(Rat{3, 2}) == Money{15});
    CHECK(f.eval_exact(Rat{1}) == Money{10});
}

TEST_CASE("concave power family") {
    PricingFn f = linear(10, 60, 10);
    f.kind = PricingKind::concave_power;
    f.gamma = 0.5;
    CHECK(f.eval(1.0) == Money{10});
    CHECK(f.eval(4.0) == Money{20});  // 10 + 10*(2 - 1)
    CHECK(f.eval(9.0) == Money{30});
    CHECK(f.initial_slope() > 0.0);
}

TEST_CASE("tabulated family interpolates between knots") {
    PricingFn f = linear(10, 60, 10);
    f.kind = PricingKind::tabulated;
    f.knots = {{1.0, Money{10}}, {2.0, Money{20}}, {4.0, Money{26}}};
    CHECK(f.eval(1.0) == Money{10});
    CHECK(f.eval(1.5) == Money{15});
    CHECK(f.eval(2.0) == Money{20});
    CHECK(f.eval(3.0) == Money{23});
    CHECK(f.eval(8.0) == Money{26});  // flat beyond the last knot

    PricingFn bad = f;
    bad.knots = {{1.0, Money{11}}, {2.0, Money{20}}};  // must start at (1, floor)
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.knots = {{1.0, Money{10}}, {1.0, Money{20}}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("quote solver finds the smallest tick clearing the curve") {
    PricingFn f = linear(10, 40, 10);
    // two providers; four jobs submit at P <= 15, one above
    auto demand = [](Money p) -> std::int64_t { return p.ticks <= 15 ? 4 : 1; };
    QuoteResult qr = solve_equilibrium_quote(f, std::function<std::int64_t(Money)>(demand), 2);
    CHECK(qr.price == Money{16});
    CHECK_FALSE(qr.clamped);
    CHECK(qr.alpha == Rat{1});  // one submitter under two providers at 16

    // no demand: floor quote
    auto none = [](Money) -> std::int64_t { return 0; };
    QuoteResult base = solve_equilibrium_quote(f, std::function<std::int64_t(Money)>(none), 3);
    CHECK(base.price == Money{10});

    // heavy inelastic demand: the cap's clamp makes the cap itself the
    // smallest tick that covers the (capped) curve
    auto heavy = [](Money) -> std::int64_t { return 50; };
    QuoteResult top = solve_equilibrium_quote(f, std::function<std::int64_t(Money)>(heavy), 2);
    CHECK(top.price == Money{40});
    CHECK(top.alpha == Rat{25});
}

TEST_CASE("quote solver rejects non-monotone demand probes") {
    PricingFn f = linear(10, 40, 10);
    auto rising = [](Money p) -> std::int64_t { return p.ticks; };
    CHECK_THROWS_AS(
        solve_equilibrium_quote(f, std::function<std::int64_t(Money)>(rising), 2),
        MonotonicityViolation);
}

TEST_CASE("a weakly responsive demand curve can settle below the clearing threshold") {
    // The tolerance conditions accept this curve, yet the solved quote stops
    // half way to the crossing point and leaves excess demand: clearing at the
    // quote needs the stronger per-tick responsiveness used by the generators.
    PricingFn f = linear(10, 40, 2);
    const double s0 = 2.0;
    auto supply = [&](Money) { return s0; };
    auto demand = [&](Money p) {
        return std::max(0.0, s0 + 4.0 - static_cast<double>(p.ticks - 10));
    };
    AdmissibilityResult adm = check_admissibility(supply, demand, f, 1.0);
    CHECK(adm.admissible);
    REQUIRE(adm.p_adm.has_value());
    CHECK(*adm.p_adm == Money{14});

    QuoteResult qr = solve_equilibrium_quote(f, std::function<double(Money)>(demand), s0);
    CHECK(qr.price == Money{12});                      // below the crossing point
    CHECK(demand(qr.price) > supply(qr.price));        // and demand is still unmet
}

TEST_CASE("trailing-mean floor update pads with the oldest entry") {
    CHECK(update_floor({Money{10}, Money{12}, Money{14}}, 3) == Money{12});
    CHECK(update_floor({Money{10}, Money{12}, Money{14}, Money{20}}, 3) == Money{15});  // 46/3 -> 15.33 -> 15
    CHECK(update_floor({Money{11}}, 3) == Money{11});  // padded by repeating the oldest
    CHECK(update_floor({Money{11}, Money{14}}, 3) == Money{12});  // (11+11+14)/3 = 12
    CHECK(update_floor({Money{10}, Money{11}}, 2) == Money{10});  // 10.5 rounds down
}
