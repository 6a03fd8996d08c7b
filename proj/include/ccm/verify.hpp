#pragma once
// Acceptance verification: thirteen seeded property suites, each checked
// against an independent oracle (exhaustive search, grid scan, hand-derived
// ledger values or closed forms). The CLI prints one line per criterion and
// exits nonzero on any failure.

#include <cstdint>
#include <string>
#include <vector>

namespace ccm {

struct VerifyOptions {
    std::uint64_t seed{1};
    std::string out_dir{};          // empty: skip artifact files (the determinism
                                    // criterion falls back to a local scratch dir)
    std::string suite{"all"};       // "all", or comma list of ids / name fragments
    bool mutate_deficiency{false};  // test fixture: off-by-one in the count predictor
};

struct CriterionResult {
    int id{0};
    std::string name;
    bool pass{false};
    std::string detail;
    double seconds{0};
};

const std::vector<int>& criterion_ids();
std::string criterion_name(int id);
bool suite_selects(const std::string& suite, int id);

CriterionResult run_criterion(int id, const VerifyOptions& opts);

struct VerificationReport {
    std::vector<CriterionResult> results;
    bool all_pass{true};
};
VerificationReport run_verification(const VerifyOptions& opts);

// Deterministic artifact bundle (reduced instance counts, same code paths as
// the full suites). The determinism criterion writes it twice and compares
// the trees byte for byte.
void write_verification_bundle(const VerifyOptions& opts, const std::string& dir);

// Instrumented matcher sweep over pool sizes 2^4..2^log2_max, shared with the
// complexity-bench subcommand.
struct ComplexitySummary {
    std::string csv;
    double cfm_ops_log_corr{0};  // pearson(ops/job, log2 n) for the feasibility tree
    double gcm_rate_spread{0};   // max/min bucket pops per job across sizes
};
ComplexitySummary complexity_sweep(std::uint64_t seed, int log2_max);

}  // namespace ccm
