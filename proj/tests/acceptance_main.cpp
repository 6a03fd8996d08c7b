// acceptance gate: runs every verification criterion and prints one line each
#include <cstdio>
#include <cstdlib>

#include "ccm/verify.hpp"

int main() {
    ccm::VerifyOptions opts;
    opts.seed = 1;
    opts.suite = "all";
    const char* env = std::getenv("CCM_OUT_DIR");
    opts.out_dir = env && *env ? env : "acceptance-artifacts";

    ccm::VerificationReport report = ccm::run_verification(opts);
    int passed = 0;
    for (const auto& r : report.results) {
        std::printf("[%s] c%02d %-26s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        passed += r.pass ? 1 : 0;
    }
    std::printf("%d/%d criteria passed\n", passed, static_cast<int>(report.results.size()));
    return report.all_pass && !report.results.empty() ? 0 : 1;
}
