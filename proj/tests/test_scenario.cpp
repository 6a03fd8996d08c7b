// config parsing: grammar coverage and error line reporting
#include <string>

#include "ccm/scenario.hpp"
#include "doctest.h"

using namespace ccm;

namespace {

std::string fixture(const char* name) {
    return std::string(TEST_SCENARIO_DIR) + "/" + name;
}

int error_line(const std::string& text) {
    try {
        parse_scenario_text(text);
    } catch (const ScenarioError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("full grammar round trip") {
    const std::string text =
        "# demo\n"
        "[market]\n"
        "floor = 1.0\n"
        "cap = 4.0\n"
        "horizon = 5\n"
        "algo = gsm\n"
        "gsm_fallback = longest\n"
        "floor_update = on\n"
        "floor_window = 2\n"
        "reoptimize = off\n"
        "seed = 99\n"
        "\n"
        "[pricing]\n"
        "kind = tabulated\n"
        "knots = 1.0:1.0, 2.0:2.0, 4.0:2.6\n"
        "\n"
        "[providers]\n"
        "provider = cost=0.8 tau=3 restake=cyclic arrival=1\n"
        "provider = cost=0.9 true_cost=0.6 tau=2\n"
        "\n"
        "[jobs]\n"
        "job = budget=4.0 deadline=3 min_run=2 value=0,2.0,3.0,3.5 arrival=1\n"
        "job = budget=9.0 deadline=4 value=power:a=2.0,gamma=0.5\n"
        "\n"
        "[race]\n"
        "epsilon = 2\n"
        "stake = 50.0\n"
        "price = 3.0\n"
        "window = one_sided\n"
        "racer = t=4\n"
        "racer = t=5 quote=6\n";

    Scenario sc = parse_scenario_text(text);

    CHECK(sc.params.pricing.floor == Money{10});
    CHECK(sc.params.pricing.cap == Money{40});
    CHECK(sc.params.horizon == 5);
    CHECK(sc.params.algo == Algo::gsm);
    CHECK(sc.params.gsm_fallback == GsmFallback::longest);
    CHECK(sc.params.floor_update);
    CHECK(sc.params.floor_window == 2);
    CHECK_FALSE(sc.params.reoptimize);
    CHECK(sc.params.seed == 99);

    CHECK(sc.params.pricing.kind == PricingKind::tabulated);
    REQUIRE(sc.params.pricing.knots.size() == 3);
    CHECK(sc.params.pricing.knots[1].first == doctest::Approx(2.0));
    CHECK(sc.params.pricing.knots[2].second == Money{26});

    REQUIRE(sc.providers.size() == 2);
    CHECK(sc.providers[0].id == 0);
    CHECK(sc.providers[0].reported_cost == Money{8});
    CHECK(sc.providers[0].true_cost == Money{8});  // defaults to the report
    CHECK(sc.providers[0].tau0 == 3);
    CHECK(sc.providers[0].restake == RestakeMode::cyclic);
    CHECK(sc.providers[0].arrival == 1);
    CHECK(sc.providers[1].true_cost == Money{6});
    CHECK(sc.providers[1].restake == RestakeMode::none);

    REQUIRE(sc.jobs.size() == 2);
    CHECK(sc.jobs[0].budget == Money{40});
    CHECK(sc.jobs[0].deadline == 3);
    CHECK(sc.jobs[0].min_run == 2);
    CHECK(sc.jobs[0].arrival == 1);
    CHECK(sc.jobs[0].value.value(3) == 35);
    CHECK(sc.jobs[1].min_run == 1);
    CHECK(sc.jobs[1].value.support() == 4);  // power support defaults to deadline

    REQUIRE(sc.race.has_value());
    CHECK(sc.race->epsilon == 2);
    CHECK(sc.race->stake == Money{500});
    CHECK(sc.race->price == Money{30});
    CHECK(sc.race->one_sided);
    REQUIRE(sc.race->racers.size() == 2);
    CHECK(sc.race->racers[0].t_true == 4);
    CHECK_FALSE(sc.race->racers[0].quote.has_value());
    CHECK(sc.race->racers[1].quote == 6);
}

TEST_CASE("race section is optional") {
    Scenario sc = parse_scenario_text(
        "[market]\nfloor = 1.0\ncap = 2.0\nhorizon = 1\n"
        "[jobs]\njob = budget=1.0 value=0,1.0\n");
    CHECK_FALSE(sc.race.has_value());
    CHECK(sc.providers.empty());
}

// ---------------------------------------------------------------------------

TEST_CASE("parse errors carry the offending line") {
    SUBCASE("unknown section") {
        CHECK(error_line("[market]\nfloor = 1.0\n[nope]\n") == 3);
    }
    SUBCASE("unterminated header") {
        CHECK(error_line("[market\n") == 1);
    }
    SUBCASE("key before any section") {
        CHECK(error_line("floor = 1.0\n") == 1);
    }
    SUBCASE("missing equals") {
        CHECK(error_line("[market]\nfloor 1.0\n") == 2);
    }
    SUBCASE("unknown market key") {
        CHECK(error_line("[market]\nflor = 1.0\n") == 2);
    }
    SUBCASE("money grain too fine") {
        // sub-tick amounts are rejected, not rounded
        CHECK(error_line("[market]\nfloor = 1.23\n") == 2);
    }
    SUBCASE("duplicate field on a provider line") {
        CHECK(error_line("[providers]\nprovider = cost=1.0 cost=2.0\n") == 2);
    }
    SUBCASE("provider missing cost") {
        CHECK(error_line("[providers]\nprovider = tau=2\n") == 2);
    }
    SUBCASE("bad field token") {
        CHECK(error_line("[providers]\nprovider = cost\n") == 2);
    }
    SUBCASE("negative budget") {
        const std::string text = "[jobs]\njob = budget=-1.0 value=0,1.0\n";
        try {
            parse_scenario_text(text);
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("budget") != std::string::npos);
        }
    }
    SUBCASE("racer missing t") {
        CHECK(error_line("[race]\nracer = quote=3\n") == 2);
    }
    SUBCASE("bad integer") {
        CHECK(error_line("[market]\nhorizon = two\n") == 2);
    }
    SUBCASE("bad on/off") {
        CHECK(error_line("[market]\nfloor_update = yes\n") == 2);
    }
    SUBCASE("non-concave value table") {
        CHECK(error_line("[jobs]\njob = budget=1.0 value=0,1.0,3.0\n") == 2);
    }
}

// ---------------------------------------------------------------------------

TEST_CASE("file fixtures parse") {
    SUBCASE("race demo") {
        Scenario sc = parse_scenario_file(fixture("race_demo.cfg"));
        REQUIRE(sc.race.has_value());
        CHECK(sc.race->racers.size() == 3);
        CHECK_FALSE(sc.race->one_sided);
        CHECK(sc.race->racers[0].quote == 4);
    }
    SUBCASE("bad budget reports line 15") {
        try {
            parse_scenario_file(fixture("bad_budget.cfg"));
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            CHECK(e.line() == 15);
        }
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(parse_scenario_file(fixture("no_such.cfg")), std::runtime_error);
    }
}
