#include "ccm/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ccm {

namespace {

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::gcm: return "gcm";
        case Algo::gsm: return "gsm";
        case Algo::cfm: return "cfm";
    }
    return "?";
}

std::string pricing_echo(const PricingFn& f) {
    std::ostringstream out;
    switch (f.kind) {
        case PricingKind::linear_capped:
            out << "kind=linear_capped slope=" << format_money(f.slope);
            break;
        case PricingKind::concave_power:
            out << "kind=concave_power slope=" << format_money(f.slope) << " gamma=" << fixed6(f.gamma);
            break;
        case PricingKind::tabulated: {
            out << "kind=tabulated knots=";
            for (std::size_t i = 0; i < f.knots.size(); ++i) {
                if (i) out << ",";
                out << fixed6(f.knots[i].first) << ":" << format_money(f.knots[i].second);
            }
            break;
        }
    }
    out << " floor=" << format_money(f.floor) << " cap=" << format_money(f.cap);
    return out.str();
}

std::string run_header(const MarketState& s, const char* what) {
    std::ostringstream out;
    out << "# ccmarket " << what << " v1\n";
    out << "# pricing: " << pricing_echo(s.params.pricing) << "\n";
    out << "# algo: " << algo_name(s.params.algo)
        << (s.params.algo == Algo::gsm
                ? (s.params.gsm_fallback == GsmFallback::reject ? " fallback=reject" : " fallback=longest")
                : "")
        << " seed=" << s.params.seed << "\n";
    return out.str();
}

}  // namespace

std::string prices_csv(const MarketState& s) {
    std::ostringstream out;
    out << run_header(s, "prices");
    out << "period,price,alpha,s_f,d_total,d_submitted,floor,clamped\n";
    for (const auto& r : s.history) {
        out << r.period << "," << format_money(r.price) << "," << fixed6(r.alpha) << "," << r.s_f
            << "," << r.d_total << "," << r.d_submitted << "," << format_money(r.floor_after) << ","
            << (r.clamped ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string matches_csv(const MarketState& s) {
    std::ostringstream out;
    out << run_header(s, "matches");
    out << "period,provider,job,price,cost,requested,hours,feasible\n";
    for (const auto& a : s.ledger) {
        out << a.period << "," << a.provider << "," << a.job << "," << format_money(a.price) << ","
            << format_money(a.cost) << "," << a.requested << "," << a.hours << ","
            << (a.feasible ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string payouts_csv(const MarketState& s) {
    std::ostringstream out;
    out << run_header(s, "payouts");
    out << "period,provider,base,premium_share,paid,cumulative_return,treasury_delta\n";
    for (const auto& row : s.payout_rows) {
        auto it = s.treasury.find(row.period);
        double delta = it == s.treasury.end() ? 0.0 : it->second.to_double();
        out << row.period << "," << row.provider << "," << format_money(row.base) << ","
            << fixed6(row.share.to_double()) << "," << format_money(row.paid) << ","
            << fixed6(row.cumulative.to_double()) << "," << fixed6(delta) << "\n";
    }
    return out.str();
}

std::string summary_csv(const MarketState& s) {
    std::ostringstream out;
    out << run_header(s, "summary");
    out << "period,price,alpha,s_f,d_total,matched,infeasible,rejected,max_matched_cost,"
           "treasury_delta,floor\n";
    for (const auto& r : s.history) {
        out << r.period << "," << format_money(r.price) << "," << fixed6(r.alpha) << "," << r.s_f
            << "," << r.d_total << "," << r.matched << "," << r.infeasible << "," << r.rejected << ","
            << (r.max_matched_cost ? format_money(*r.max_matched_cost) : "-") << ","
            << fixed6(r.treasury_delta.to_double()) << "," << format_money(r.floor_after) << "\n";
    }
    return out.str();
}

std::string race_scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << "# ccmarket race scan v1\n";
    out << "racer,quote,wins,min_payoff,max_payoff,undominated\n";
    for (const auto& r : rows) {
        out << r.racer << "," << r.quote << "," << r.wins << "," << format_money(Money{r.min_payoff})
            << "," << format_money(Money{r.max_payoff}) << "," << (r.undominated ? 1 : 0) << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_run_artifacts(const MarketState& s, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir + "/prices.csv", prices_csv(s));
    write_file(dir + "/matches.csv", matches_csv(s));
    write_file(dir + "/payouts.csv", payouts_csv(s));
    write_file(dir + "/summary.csv", summary_csv(s));
}

std::string resolve_out_dir(const std::string& cli_out, const std::string& fallback) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("CCM_OUT_DIR"); env && *env) return env;
    return fallback;
}

}  // namespace ccm
