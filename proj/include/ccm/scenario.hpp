#pragma once
// Sectioned plain-text scenario configs: [market], [pricing], [providers],
// [jobs] and an optional [race] block. Parse errors carry line numbers; the
// CLI maps them to exit code 2.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccm/engine.hpp"
#include "ccm/race.hpp"

namespace ccm {

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct Scenario {
    MarketParams params;
    std::vector<ProviderRecord> providers;
    std::vector<JobSpec> jobs;
    std::optional<RaceConfig> race;
};

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario_file(const std::string& path);  // throws ScenarioError / runtime_error

}  // namespace ccm
