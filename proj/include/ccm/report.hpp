#pragma once
// CSV artifact emission for runs. Versioned '#' header comments, money as
// decimals with one fractional digit, loads with six. No wall-clock content:
// artifacts from identical runs must be byte-identical.

#include <string>

#include "ccm/engine.hpp"
#include "ccm/race.hpp"

namespace ccm {

std::string prices_csv(const MarketState& s);
std::string matches_csv(const MarketState& s);
std::string payouts_csv(const MarketState& s);
std::string summary_csv(const MarketState& s);
std::string race_scan_csv(const std::vector<ScanRow>& rows);

// Writes prices.csv, matches.csv, payouts.csv and summary.csv under dir
// (created if missing).
void write_run_artifacts(const MarketState& s, const std::string& dir);

void write_file(const std::string& path, const std::string& content);

// Output directory resolution: --out wins, else $CCM_OUT_DIR, else `fallback`.
std::string resolve_out_dir(const std::string& cli_out, const std::string& fallback);

}  // namespace ccm
